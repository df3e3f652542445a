import socket
import threading
import time

import pytest
import requests
import uvicorn


def free_port() -> int:
    s = socket.socket()
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]
    s.close()
    return port


class LiveServer:
    """A uvicorn instance on an ephemeral port, used by service and UI tests."""

    def __init__(self, app):
        self.port = free_port()
        self.base = f"http://127.0.0.1:{self.port}"
        self._server = uvicorn.Server(uvicorn.Config(
            app, host="127.0.0.1", port=self.port, log_level="error"))
        self._thread = threading.Thread(target=self._server.run, daemon=True)

    def start(self):
        self._thread.start()
        deadline = time.time() + 15
        while time.time() < deadline:
            try:
                requests.get(self.base + "/catalog", timeout=1)
                return self
            except Exception:
                time.sleep(0.05)
        raise RuntimeError("server did not come up")

    def stop(self):
        self._server.should_exit = True
        self._thread.join(timeout=5)


@pytest.fixture()
def live_server():
    from clusterens.service import create_app

    server = LiveServer(create_app()).start()
    yield server
    server.stop()
