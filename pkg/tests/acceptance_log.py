"""Shared record of acceptance outcomes: criterion number -> (passed, text)."""

RESULTS = {}


def record(number, ok, text):
    RESULTS[number] = (ok, text)
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}"
    print(line)
    return line
