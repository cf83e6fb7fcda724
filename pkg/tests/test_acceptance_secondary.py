"""Acceptance criteria for the scorer service, exercised over real HTTP.

Skips itself when node or the built service (scorer-service/dist) is absent,
so the primary suite runs standalone.
"""

import csv
import json
import shutil
import subprocess
import sys
import time
from pathlib import Path

import pytest
from click.testing import CliRunner

from promptbo import cli
from promptbo.metrics import accuracy, f1_binary
from promptbo.objective import (
    PROTO_HEADER,
    PROTO_VERSION,
    ScoreRequest,
    ScoreResponse,
)
from promptbo.optimizer import TRACE_HEADER

import requests

from test_acceptance import report

SERVICE_DIR = Path(__file__).resolve().parent.parent / "scorer-service"
SERVER_JS = SERVICE_DIR / "dist" / "server.js"

pytestmark = pytest.mark.skipif(
    shutil.which("node") is None or not SERVER_JS.is_file(),
    reason="scorer service not built (run npm install && npm run build in scorer-service/)",
)


@pytest.fixture(scope="module")
def service_url():
    proc = subprocess.Popen(
        ["node", str(SERVER_JS), "--port", "0", "--metric", "acc", "--seed", "0"],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
        text=True,
    )
    try:
        line = ""
        deadline = time.monotonic() + 15
        while time.monotonic() < deadline:
            line = proc.stdout.readline()
            if "listening on port" in line:
                break
            if proc.poll() is not None:
                pytest.fail(f"service exited at startup: {line}")
        else:
            pytest.fail("service did not report a port within 15s")
        port = int(line.rsplit(" ", 1)[1])
        yield f"http://127.0.0.1:{port}"
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def _post(url, body: str):
    return requests.post(
        f"{url}/score",
        data=body.encode("utf-8"),
        headers={"Content-Type": "application/json", PROTO_HEADER: PROTO_VERSION},
        timeout=10,
    )


def test_scorer_conformance(service_url, fixtures_dir, tmp_path):
    ok = True
    detail = []

    # every valid request fixture scores; responses validate and round-trip
    for path in sorted(fixtures_dir.glob("request_*.json")):
        resp = _post(service_url, path.read_text(encoding="utf-8"))
        good = (
            resp.status_code == 200
            and resp.headers.get(PROTO_HEADER) == PROTO_VERSION
            and ScoreResponse.parse(resp.text).serialize() == resp.text
        )
        if not good:
            ok = False
            detail.append(f"{path.name}: HTTP {resp.status_code}")

    # malformed request fixtures are rejected with 400
    for path in sorted((fixtures_dir / "invalid").glob("request_*.json")):
        resp = _post(service_url, path.read_text(encoding="utf-8"))
        if resp.status_code != 400:
            ok = False
            detail.append(f"{path.name}: HTTP {resp.status_code} != 400")

    # determinism on the wire
    body = ScoreRequest((3, 1, 4), "c a e", "dev").serialize()
    if _post(service_url, body).text != _post(service_url, body).text:
        ok = False
        detail.append("identical requests gave different responses")

    # a full optimize run against the live service: exit 0 and a valid trace
    config = {
        "vocab_size": 6,
        "prompt_length": 3,
        "objective": {"remote": {"url": service_url, "timeout_s": 10, "retries": 1}},
        "n_init": 4,
        "budget": 4,
        "top_b": 2,
        "seed": 11,
        "n_raw_probes": 64,
        "n_restarts": 2,
        "max_ascent_steps": 10,
        "out_dir": str(tmp_path),
    }
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps(config), encoding="utf-8")
    result = CliRunner().invoke(cli.main, ["optimize", "--config", str(cfg_path)])
    if result.exit_code != 0:
        ok = False
        detail.append(f"optimize exit {result.exit_code}: {result.output}")
    else:
        with open(tmp_path / "trace.csv", encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
        best = [float(r[4]) for r in rows[1:]]
        trace_ok = (
            rows[0] == TRACE_HEADER
            and len(rows) == 1 + config["n_init"] + config["budget"]
            and all(b >= a for a, b in zip(best, best[1:]))
        )
        if not trace_ok:
            ok = False
            detail.append("trace invalid")

    report("Scorer conformance (golden fixtures over HTTP, optimize exit 0, valid trace)",
           ok, "; ".join(detail))


def test_cross_component_score(service_url):
    worst = 0.0
    for ids, text in [((0, 2, 5), "alpha gamma zeta"), ((), ""), ((7, 7, 7, 7), "h h h h")]:
        resp = _post(service_url, ScoreRequest(ids, text, "train").serialize())
        parsed = ScoreResponse.parse(resp.text)
        assert parsed.predictions is not None and parsed.labels is not None
        rescored = accuracy(list(parsed.predictions), list(parsed.labels))
        worst = max(worst, abs(parsed.score - rescored))
        # the dumps are binary, so the F1 route must also be self-consistent
        f1_binary(list(parsed.predictions), list(parsed.labels))
    report("Cross-component score check (service score == metrics module, 1e-9)",
           worst <= 1e-9, f"worst abs err {worst:.2e}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
