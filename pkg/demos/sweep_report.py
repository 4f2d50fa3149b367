"""Run a handful of checks over a small range and print a summary table.

Run with: python3 demos/sweep_report.py [pmax]
Rows that fail are listed with the extra data each check attaches.
"""

import sys

from supersingular import verify
from supersingular.verify import Domain

pmax = int(sys.argv[1]) if len(sys.argv) > 1 else 80
checks = ["T1.2", "T1.3", "T1.5", "T2.1", "C-SQ57", "C-HEUN", "C-3C", "O-P23", "O-DUAL"]

print(f"{'check':<8} {'kind':<12} {'pass':>5} {'fail':>5} {'skip':>5}")
failures = []
for cid in checks:
    desc = verify.descriptor(cid)
    dom = verify.resolve_domain(cid)
    rows = verify.run_check(cid, Domain(dom.pmin, min(pmax, dom.pmax), levels=dom.levels, extra_primes=dom.extra_primes))
    counts = verify.summarize(rows)
    print(f"{cid:<8} {desc.kind:<12} {counts[verify.PASS]:>5} {counts[verify.FAIL]:>5} {counts[verify.SKIP]:>5}")
    failures += [r for r in rows if r.verdict == verify.FAIL][:2]

if failures:
    print("\nfirst failing rows per check:")
    for r in failures:
        print(f"  {r.check_id} p={r.p} N={r.N} case={r.case} data={r.data}")
