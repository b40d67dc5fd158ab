"""Helpers shared by the command-line tests."""

import json
import subprocess
import sys


def run(binary, *args, cwd=None):
    proc = subprocess.run([binary, *map(str, args)], cwd=cwd, capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def load_strict(path):
    """Loads a JSON file, rejecting NaN and Infinity literals."""

    def reject(token):
        raise ValueError(f"{path}: non-finite literal {token}")

    with open(path, encoding="utf-8") as f:
        return json.load(f, parse_constant=reject)


class Checks:
    def __init__(self):
        self.failures = 0

    def expect(self, ok, what):
        print(("ok   " if ok else "FAIL ") + what)
        if not ok:
            self.failures += 1

    def finish(self):
        print(f"{self.failures} failure(s)")
        sys.exit(1 if self.failures else 0)
