"""Prints a per-criterion acceptance summary after the test run."""

import re

CRITERIA = {
    1: "measure property matrix (symmetry, asymmetry, ordinal awareness)",
    2: "bin-ranking divergence worked examples",
    3: "tau-b equals the brute-force oracle",
    4: "tau confidence interval regression",
    5: "identity scores and range bounds",
    6: "order-aware divergence symmetry on positive pairs",
    7: "consistency command determinism and runtime",
    8: "randomized Tukey HSD sanity",
    9: "synthetic end-to-end measure separation",
}

_CRIT_RE = re.compile(r"test_acceptance\.py::test_c(\d+)_")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    tallies = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            match = _CRIT_RE.search(getattr(report, "nodeid", ""))
            if match is None:
                continue
            n = int(match.group(1))
            good, bad = tallies.get(n, (0, 0))
            tallies[n] = (good + (outcome == "passed"), bad + (outcome != "passed"))
    if not tallies:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for n in sorted(tallies):
        good, bad = tallies[n]
        label = CRITERIA.get(n, "?")
        if bad == 0:
            terminalreporter.write_line(f"criterion {n} ({label}): PASS ({good} checks)")
        else:
            terminalreporter.write_line(
                f"criterion {n} ({label}): FAIL ({bad} of {good + bad} checks failed)"
            )
