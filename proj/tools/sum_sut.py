#!/usr/bin/env python3
"""Minimal external SUT: sums each input list.

Speaks the line-delimited JSON protocol mrtrim uses for --external:
request {"id": n, "input": [...]} -> response {"id": n, "output": x}.
Report failures with {"id": n, "error": "message"} instead.
"""
import json
import sys

for line in sys.stdin:
    req = json.loads(line)
    print(json.dumps({"id": req["id"], "output": float(sum(req["input"]))}),
          flush=True)
