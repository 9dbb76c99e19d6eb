"""Where the surfaces S_6, S_129 and S_321 come from.

Riemann-Hurwitz gives the genera; Reidemeister-Schreier recovers b1 of the
index-64 subgroup directly from the presentation of pi_1(S_3).
"""

from fibering.surfgroup import (
    SurfacePresentation,
    abelianized_rank,
    mod2_homology_cover,
    reidemeister_schreier,
    riemann_hurwitz_genus,
)

# double cover of S_3 branched at two points
print("double cover of S_3 over 2 branch points: genus", riemann_hurwitz_genus(3, 2, [2, 2]))

# the mod-2 homology cover has degree |H_1(S_3; Z/2)| = 64 and no branching
print("mod-2 homology cover of S_3: genus", riemann_hurwitz_genus(3, 64))

# fiber over S_3: double cover of S_129 branched along 2 * 64 = 128 points
print("fiber of the second projection: genus", riemann_hurwitz_genus(129, 2, [2] * 128))

sub = reidemeister_schreier(SurfacePresentation(3), mod2_homology_cover(3))
print(f"Schreier: index {sub.index}, {sub.rank} generators, abelianized rank {abelianized_rank(sub)}")
