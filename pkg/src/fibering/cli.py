"""Command-line entry point: ``fibering {ak,salter,cover,rh,rs}``.

Exit codes: 0 certified, 1 a hypothesis check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .certificate import FiberingCertificate, _plain

TOOL = "fibering"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def envelope(command: str, parameters: dict, seed: Optional[int], payload, elapsed: Optional[float] = None) -> dict:
    out = {
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "parameters": _plain(parameters),
        "seed": seed,
        "payload": _plain(payload),
    }
    if elapsed is not None:
        # wall-clock time breaks byte-identical output, so it is opt-in
        out["timing"] = {"seconds": round(elapsed, 3)}
    return out


def parse_branch(text: str) -> list:
    """'2,2' -> [2, 2]; '2x128' (or '2×128') -> 128 copies of 2; '' -> []."""
    text = text.strip()
    if not text:
        return []
    out = []
    for part in text.split(","):
        part = part.strip().replace("×", "x")
        try:
            if "x" in part:
                m, count = part.split("x")
                out += [int(m)] * int(count)
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad branch data {part!r}") from None
    return out


# ---------------------------------------------------------------------------
# text rendering


def render_certificate(cert: dict) -> str:
    lines = [f"manifold: {cert['manifold']}"]
    for c in cert["checks"]:
        lines.append(f"  [{c['status']}] {c['name']}")
    if cert["dims"]:
        lines.append("dims: " + json.dumps(cert["dims"], sort_keys=True))
    for a in cert["axioms"]:
        lines.append(f"axiom: {a}")
    for n in cert["notes"]:
        lines.append(f"note: {n}")
    concl = cert["conclusion"]
    lines.append(f"conclusion: Fib = {concl['fib']} ({concl['statement']})" if concl else "conclusion: none")
    return "\n".join(lines)


def render(env: dict) -> str:
    payload = env["payload"]
    head = f"{env['tool']} {env['version']} {env['command']}"
    if isinstance(payload, dict) and "checks" in payload:
        return head + "\n" + render_certificate(payload)
    if isinstance(payload, dict) and "certificate" in payload:
        body = {k: v for k, v in payload.items() if k != "certificate"}
        return "\n".join([head, json.dumps(body, sort_keys=True), render_certificate(payload["certificate"])])
    if isinstance(payload, dict) and "survey" in payload:
        rows = [f"{'variants':<40} dim  b1"]
        for r in payload["survey"]:
            rows.append(f"{' '.join(r['variants']):<40} {r['invariant_dim']:>3} {r['b1']:>4}")
        return head + "\n" + "\n".join(rows) + "\n" + payload["note"]
    return head + "\n" + json.dumps(payload, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# commands; each returns (payload, exit code)


def _cert_result(cert: FiberingCertificate, extra: Optional[dict] = None):
    code = EXIT_OK if cert.fib is not None else EXIT_FAIL
    if extra:
        return dict(extra, certificate=cert.to_dict()), code
    return cert.to_dict(), code


def cmd_ak(args):
    from .akcert import ak_certificate, default_selection, lift_variant_survey, minimal_route, minimal_selection

    if args.variant_survey:
        rows = lift_variant_survey()
        return {"survey": rows, "note": "exploratory; no conclusion asserted"}, EXIT_OK
    if args.selection == "minimal":
        route = minimal_route(selection=minimal_selection())
        cert = ak_certificate()
        return _cert_result(cert, {"minimal_route": route})
    return _cert_result(ak_certificate(default_selection()))


def cmd_salter(args):
    from .salter import no_fifth_fibering_check

    if args.genus < 2:
        raise UsageError("genus must be at least 2 (the base needs g(B) > 1)")
    if args.trials < 0:
        raise UsageError("trials must be non-negative")
    return _cert_result(no_fifth_fibering_check(args.genus, args.trials, args.seed))


def cmd_cover(args):
    from .coverbundle import SpecError, cover_certificate, cover_h1_data, parse_spec

    try:
        spec = parse_spec(args.spec)
        data = cover_h1_data(spec)
    except SpecError as exc:
        raise UsageError(str(exc)) from None
    return _cert_result(cover_certificate(spec), {"h1": list(data.as_tuple())})


def cmd_rh(args):
    from .surfgroup import MalformedCoverError, riemann_hurwitz_genus

    branch = parse_branch(args.branch)
    try:
        genus = riemann_hurwitz_genus(args.base_genus, args.degree, branch)
    except MalformedCoverError as exc:
        raise UsageError(str(exc)) from None
    return {"genus": genus, "branch_points": len(branch)}, EXIT_OK


def cmd_rs(args):
    from .surfgroup import (
        SurfacePresentation,
        abelianized_rank,
        group_as_subgroup,
        mod2_homology_cover,
        reidemeister_schreier,
        riemann_hurwitz_genus,
    )

    if args.genus < 1:
        raise UsageError("genus must be at least 1")
    pres = SurfacePresentation(args.genus)
    if args.mod2:
        sub = reidemeister_schreier(pres, mod2_homology_cover(args.genus))
    else:
        sub = group_as_subgroup(pres)
    return {
        "index": sub.index,
        "generators": sub.rank,
        "b1": abelianized_rank(sub),
        "genus": riemann_hurwitz_genus(args.genus, sub.index),
    }, EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=TOOL, description="Exact certificates for fibering numbers of surface bundles.")
    p.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="emit the JSON envelope")
        sp.add_argument("--timing", action="store_true", help="include wall-clock time")

    ak = sub.add_parser("ak", help="Atiyah-Kodaira certificate (Fib = 2)")
    ak.add_argument("--selection", choices=("default", "minimal"), default="default")
    ak.add_argument("--variant-survey", action="store_true", help="tabulate lift variants; asserts nothing")
    common(ak)
    ak.set_defaults(func=cmd_ak)

    sa = sub.add_parser("salter", help="Salter manifold certificate (Fib = 4)")
    sa.add_argument("--genus", type=int, default=2)
    sa.add_argument("--trials", type=int, default=1000)
    sa.add_argument("--seed", type=int, default=0)
    common(sa)
    sa.set_defaults(func=cmd_salter)

    co = sub.add_parser("cover", help="finite regular cover of a product of surfaces")
    co.add_argument("--spec", required=True, help="JSON cover spec")
    common(co)
    co.set_defaults(func=cmd_cover)

    rh = sub.add_parser("rh", help="Riemann-Hurwitz genus of a cover")
    rh.add_argument("-g", "--base-genus", type=int, required=True)
    rh.add_argument("-d", "--degree", type=int, required=True)
    rh.add_argument("-b", "--branch", default="", help="multiplicities, e.g. 2,2 or 2x128")
    common(rh)
    rh.set_defaults(func=cmd_rh)

    rs = sub.add_parser("rs", help="Reidemeister-Schreier on a surface group")
    rs.add_argument("--genus", type=int, required=True)
    rs.add_argument("--mod2", action="store_true", help="kernel of pi_1 -> H_1(;Z/2)")
    common(rs)
    rs.set_defaults(func=cmd_rs)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command", "json", "timing", "seed")}
    seed = getattr(args, "seed", 0)
    start = time.perf_counter()
    try:
        payload, code = args.func(args)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"{TOOL} {args.command}: error: {exc}\n")
    env = envelope(args.command, params, seed, payload, time.perf_counter() - start if args.timing else None)
    if args.json:
        sys.stdout.write(json.dumps(env, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(render(env) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
