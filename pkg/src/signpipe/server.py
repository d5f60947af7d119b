"""Newline-delimited JSON streaming service.

One TCP connection is one session.  Every inbound line is a JSON object
with a "type" field; every pipeline event goes back as one JSON line.
Malformed input is answered with a recoverable "error" message and the
session continues; closing the connection flushes the session.  Sessions
are fully independent, so concurrent connections never share state.
"""

from __future__ import annotations

import asyncio
import copy
import json
import logging
import uuid

from .classifier import Model
from .config import PipelineConfig
from .lexicon import Dictionary
from .pipeline import Session, error_event

log = logging.getLogger(__name__)

MAX_LINE_BYTES = 1 << 20


class SignPipeServer:
    def __init__(
        self,
        model: Model,
        dictionary: Dictionary,
        scene,
        config: PipelineConfig | None = None,
    ):
        self.model = model
        self.dictionary = dictionary
        self.scene = scene
        self.config = config or PipelineConfig()
        self._server: asyncio.AbstractServer | None = None

    async def start(self, host: str = "127.0.0.1", port: int = 7325):
        self._server = await asyncio.start_server(
            self._handle_connection, host, port, limit=MAX_LINE_BYTES
        )
        return self._server.sockets[0].getsockname()

    async def serve_forever(self):
        assert self._server is not None
        async with self._server:
            await self._server.serve_forever()

    async def close(self):
        if self._server is not None:
            self._server.close()
            await self._server.wait_closed()

    async def _handle_connection(self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter):
        session_id = uuid.uuid4().hex[:8]
        # each session mutates its own scene copy; model/dictionary are shared
        # read-only except for the per-session threshold, so copy the model too
        session = Session(
            model=copy.deepcopy(self.model),
            dictionary=self.dictionary,
            scene=copy.deepcopy(self.scene),
            config=self.config,
            session_id=session_id,
        )
        log.info("session %s connected", session_id)

        async def send(events: list[dict]):
            for ev in events:
                writer.write((json.dumps(ev) + "\n").encode("utf-8"))
            await writer.drain()

        try:
            while True:
                try:
                    line = await reader.readline()
                except (asyncio.LimitOverrunError, ValueError):
                    await send([error_event("bad_message", "line too long")])
                    continue
                if not line:
                    break
                text = line.decode("utf-8", errors="replace").strip()
                if not text:
                    continue
                try:
                    obj = json.loads(text)
                except json.JSONDecodeError as exc:
                    await send([error_event("bad_json", str(exc))])
                    continue
                await send(session.handle_message(obj))
            await send(session.flush())
        except (ConnectionResetError, BrokenPipeError):
            pass
        finally:
            writer.close()
            try:
                await writer.wait_closed()
            except (ConnectionResetError, BrokenPipeError):
                pass
            log.info("session %s closed", session_id)


async def serve(
    model: Model,
    dictionary: Dictionary,
    scene,
    config: PipelineConfig | None = None,
    host: str = "127.0.0.1",
    port: int = 7325,
):
    server = SignPipeServer(model, dictionary, scene, config)
    addr = await server.start(host, port)
    log.info("listening on %s:%s", *addr[:2])
    await server.serve_forever()
