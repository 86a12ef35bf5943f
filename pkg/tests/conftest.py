import re

_CRITERION = re.compile(r"test_acceptance\.py::test_c(\d\d)_")


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            match = _CRITERION.search(getattr(rep, "nodeid", ""))
            if match is None or rep.when not in ("call", "setup"):
                continue
            if rep.when == "setup" and outcome == "passed":
                continue
            props = dict(getattr(rep, "user_properties", []))
            rows.append((int(match.group(1)), "PASS" if outcome == "passed" else "FAIL",
                         props.get("title", ""), props.get("detail", "")))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, status, title, detail in sorted(rows):
        line = f"criterion {num:2d}: {status}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
