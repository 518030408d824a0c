import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[i]
        terminalreporter.write_line(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {mod.TITLES[i]} | {detail}")
