import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, title, problems = results[n]
        line = f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}: {title}"
        if problems:
            line += f" ({len(problems)} problems, first: {problems[0]})"
        terminalreporter.write_line(line)
