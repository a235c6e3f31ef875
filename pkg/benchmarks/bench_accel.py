"""Time the hot kernels under the numba and pure-Python backends.

Each backend runs in its own interpreter because the choice is fixed at
import time by SCAKE_DISABLE_NUMBA.

    python benchmarks/bench_accel.py [--docs 3] [--sentences 300] [--repeats 5]
"""

import argparse
import json
import os
import subprocess
import sys
from pathlib import Path

WORKER = r"""
import json, statistics, sys, time
sys.path.insert(0, {tests!r})
from synthetic import synthetic_text
from scake._accel import backend
from scake.candidates import sigma_filter, term_occurrences, CandidateSet
from scake.decompose import truss_decompose, weighted_core_decompose
from scake.graph import GOW, TG, build_cag, build_window_graph
from scake.scoring import pagerank
from scake.textproc import StopwordList, build_document

sw = StopwordList.default()
docs = [build_document(synthetic_text({sentences}, seed=s), sw) for s in range({docs})]

def timed(fn):
    fn()  # compile / warm caches
    ts = []
    for _ in range({repeats}):
        t0 = time.perf_counter(); fn(); ts.append(time.perf_counter() - t0)
    return statistics.median(ts)

rows = {{}}
for d in docs:
    cand = sigma_filter(d)
    full = CandidateSet(tuple(term_occurrences(d).values()), "all-nonstop")
    cag = build_cag(d, full)
    gow = build_window_graph(d, full, GOW)
    for name, fn in (
        ("sigma_filter", lambda: sigma_filter(d)),
        ("cag_build", lambda: build_cag(d, cand)),
        ("window_build", lambda: build_window_graph(d, full, GOW)),
        ("truss", lambda: truss_decompose(cag)),
        ("weighted_core", lambda: weighted_core_decompose(gow)),
        ("pagerank", lambda: pagerank(build_window_graph(d, full, TG))),
    ):
        rows[name] = rows.get(name, 0.0) + timed(fn) / len(docs)
print(json.dumps({{"backend": backend(), "tokens": sum(x.length for x in docs) // len(docs), "ms": {{k: 1e3 * v for k, v in rows.items()}}}}))
"""


def run(disabled, args):
    env = dict(os.environ)
    env.pop("SCAKE_DISABLE_NUMBA", None)
    if disabled:
        env["SCAKE_DISABLE_NUMBA"] = "1"
    tests = str(Path(__file__).resolve().parent.parent / "tests")
    code = WORKER.format(tests=tests, sentences=args.sentences, docs=args.docs, repeats=args.repeats)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--docs", type=int, default=3)
    ap.add_argument("--sentences", type=int, default=300)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    fast, slow = run(False, args), run(True, args)
    print(f"documents: {args.docs} x ~{fast['tokens']} tokens; median ms per document")
    print(f"{'kernel':<15}{fast['backend']:>10}{slow['backend']:>10}{'speedup':>10}")
    for name in fast["ms"]:
        a, b = fast["ms"][name], slow["ms"][name]
        print(f"{name:<15}{a:>10.2f}{b:>10.2f}{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
