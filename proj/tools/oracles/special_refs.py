# SPDX-License-Identifier: Apache-2.0
"""Regenerates tests/data/special_refs.inc with mpmath at 40 digits."""
import mpmath as mp

mp.mp.dps = 40

def c(z):
    z = mp.mpc(z)
    return "{%s, %s}" % (mp.nstr(z.real, 20, min_fixed=-30, max_fixed=30), mp.nstr(z.imag, 20, min_fixed=-30, max_fixed=30))

ss = [mp.mpc(0.5, 0), mp.mpc(0.5, 5), mp.mpc(0.5, 20), mp.mpc(0.5, -13), mp.mpc(0.3, 2),
      mp.mpc(1.2, -7), mp.mpc(0.5, 45), mp.mpc(0.75, 0.3), mp.mpc(0.25, -30)]
rs = [0.01, 0.7, 3, 12, 40, 90]
phis = [0, 0.8, 1.45, -1.3, -1.55]

lines = ["// SPDX-License-Identifier: Apache-2.0",
         "// Generated by tools/oracles/special_refs.py; do not edit.",
         "struct GammaRef { std::complex<double> s, z, value; };",
         "static const GammaRef kGammaUpperRefs[] = {"]
for s in ss:
    for r in rs:
        for p in phis:
            z = r * mp.expj(p)
            v = mp.gammainc(s, a=z)
            lines.append("  {%s, %s, %s}," % (c(s), c(z), c(v)))
lines.append("};")
lines.append("struct FnRef { std::complex<double> z, value; };")
lines.append("static const FnRef kLogGammaRefs[] = {")
zs = [mp.mpc(0.5, 0), mp.mpc(0.5, 1), mp.mpc(0.5, 10), mp.mpc(0.5, -37.5), mp.mpc(3.2, 0.1),
      mp.mpc(0.01, 0.2), mp.mpc(12, -60), mp.mpc(0.5, 100), mp.mpc(0.25, 0.5)]
for z in zs:
    lines.append("  {%s, %s}," % (c(z), c(mp.loggamma(z))))
lines.append("};")
lines.append("static const FnRef kDigammaRefs[] = {")
for z in zs:
    lines.append("  {%s, %s}," % (c(z), c(mp.digamma(z))))
lines.append("};")
open("tests/data/special_refs.inc", "w").write("\n".join(lines) + "\n")
