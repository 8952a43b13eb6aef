"""Shared pytest plumbing: the acceptance-criteria summary block."""

acceptance_results = {}


def record_acceptance(number: int, status: str, detail: str):
    acceptance_results[number] = (status, detail)


def pytest_terminal_summary(terminalreporter):
    if not acceptance_results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(acceptance_results):
        status, detail = acceptance_results[number]
        terminalreporter.write_line(f"ACCEPTANCE {number}: {status} — {detail}")
