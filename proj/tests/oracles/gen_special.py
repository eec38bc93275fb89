"""High-precision reference values for the special-function tests.

Run with mpmath; paste the output into tests/test_special.cpp.
"""
import mpmath as mp

mp.mp.dps = 40

print("// log-gamma")
for a in ["0.5", "0.75", "1.25", "1.5", "1.999", "2.5", "3.7", "10", "25.3", "50"]:
    print(f"    {{{a}, {mp.nstr(mp.loggamma(mp.mpf(a)), 20)}}},")

print("// Q(a, x)")
for a in ["0.5", "1.7", "2", "4", "10.5", "50"]:
    for x in ["0.01", "0.5", "1", "5", "20", "60", "150", "200"]:
        q = mp.gammainc(mp.mpf(a), mp.mpf(x), mp.inf, regularized=True)
        print(f"    {{{a}, {x}, {mp.nstr(q, 20)}}},")

print("// P(a, x) small x")
for a in ["0.5", "1", "2", "4"]:
    for x in ["1e-12", "1e-6", "0.001"]:
        p = mp.gammainc(mp.mpf(a), 0, mp.mpf(x), regularized=True)
        print(f"    {{{a}, {x}, {mp.nstr(p, 20)}}},")

print("// zeta(k) - 1")
for k in range(2, 41):
    print(f"    {mp.nstr(mp.zeta(k) - 1, 20)},")
