"""Regular covers of S_2 x S_2 and their two fiberings."""

from fibering.coverbundle import cover_certificate, cover_h1_data, example_specs

for name, spec in example_specs().items():
    data = cover_h1_data(spec)
    cert = cover_certificate(spec)
    print(f"{name:>16}: index {data.index:>2}  b1(Im p1) {data.b1_im1:>2}  b1(Im p2) {data.b1_im2}"
          f"  b1(E) {data.b1_total:>2}  Fib {cert.fib}")

print()
print(cover_certificate(example_specs()["trivial"]).notes[0])
