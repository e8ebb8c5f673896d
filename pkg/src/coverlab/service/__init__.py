"""HTTP service exposing every command as POST /v1/<command>."""

from coverlab.service.app import create_app

__all__ = ["create_app"]
