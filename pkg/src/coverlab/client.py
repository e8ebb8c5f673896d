"""Transport for the CLI: in-process ASGI by default, HTTP on request.

Every CLI invocation goes through the same service endpoint either
way, so local runs and remote runs produce identical bytes.
"""

from __future__ import annotations

import asyncio
from dataclasses import dataclass
from typing import Optional

import httpx

from coverlab.service.models import ExperimentConfig


@dataclass(frozen=True)
class ServiceReply:
    status: int
    text: str

    def json(self) -> dict:
        import json

        return json.loads(self.text)


def _payload(cfg: ExperimentConfig) -> dict:
    return cfg.model_dump(exclude_none=True, exclude_defaults=True, exclude={"output"})


async def _post_in_process(command: str, payload: dict) -> ServiceReply:
    from coverlab.service.app import app

    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(
        transport=transport, base_url="http://coverlab.internal", timeout=None
    ) as client:
        resp = await client.post(f"/v1/{command}", json=payload)
        return ServiceReply(resp.status_code, resp.text)


def run_via_service(command: str, cfg: ExperimentConfig, server: Optional[str] = None) -> ServiceReply:
    """POST the config to /v1/<command>, locally or at `server`."""
    payload = _payload(cfg)
    if server is None:
        return asyncio.run(_post_in_process(command, payload))
    with httpx.Client(base_url=server, timeout=None) as client:
        resp = client.post(f"/v1/{command}", json=payload)
        return ServiceReply(resp.status_code, resp.text)
