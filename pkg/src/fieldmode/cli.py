"""`simulate`: thin client for the simulation service.

Reads a scenario config, submits it to the service and writes the returned
artifacts under --out. With no --server (and no FIELDMODE_SERVER in the
environment) the service application is mounted in-process, so local runs
need no network at all.

Exit codes: 0 success, 1 config error, 2 runtime/transport error.
"""

from __future__ import annotations

import argparse
import asyncio
import os
import sys
from pathlib import Path

import httpx


def _submit(server: str | None, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            return client.post("/runs", json=payload)

    from .service import app

    async def post_in_process() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, timeout=None,
                                     base_url="http://fieldmode.local") as client:
            return await client.post("/runs", json=payload)

    return asyncio.run(post_in_process())


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Run a field-mode scenario from a config file")
    parser.add_argument("config", help="path to the scenario config")
    parser.add_argument("--out", default=".", help="directory for the artifacts")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--threads", type=int, default=None,
                        help="override the thread count (or set FIELDMODE_THREADS)")
    parser.add_argument("--server", default=os.environ.get("FIELDMODE_SERVER"),
                        help="base URL of a running simulate-server; "
                             "in-process by default")
    args = parser.parse_args(argv)

    try:
        config_text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"simulate: cannot read config: {exc}", file=sys.stderr)
        return 1

    threads = args.threads
    if threads is None and os.environ.get("FIELDMODE_THREADS"):
        try:
            threads = int(os.environ["FIELDMODE_THREADS"])
        except ValueError:
            print("simulate: FIELDMODE_THREADS must be an integer", file=sys.stderr)
            return 1

    payload = {"config_text": config_text, "seed": args.seed, "threads": threads}
    try:
        response = _submit(args.server, payload)
    except httpx.HTTPError as exc:
        print(f"simulate: transport failure: {exc}", file=sys.stderr)
        return 2

    if response.status_code == 200:
        body = response.json()
        out_dir = Path(args.out)
        for artifact in body["artifacts"]:
            rel = Path(artifact["path"])
            if rel.is_absolute() or ".." in rel.parts:
                print(f"simulate: refusing artifact path {rel}", file=sys.stderr)
                return 2
            target = out_dir / rel
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(artifact["content"], encoding="utf-8")
            print(f"wrote {target}")
        return 0

    detail = {}
    try:
        detail = response.json().get("detail", {})
    except ValueError:
        pass
    if isinstance(detail, dict):
        message = detail.get("message", response.text)
        if detail.get("error"):
            message = f"{detail['error']}: {message}"
    else:
        message = str(detail)
    if response.status_code == 422:
        print(f"simulate: config error: {message}", file=sys.stderr)
        return 1
    print(f"simulate: run failed ({response.status_code}): {message}", file=sys.stderr)
    return 2


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
