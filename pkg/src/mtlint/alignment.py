"""Word alignments for the coverage detector.

Alignments arrive through a provider abstraction so the detector never cares
where they came from: a line-aligned Pharaoh file shipped with the corpus, a
sidecar aligner process speaking newline-delimited JSON over stdin/stdout or
a local TCP socket, or the diagonal stub used in tests.

Token indices on both sides refer to plain whitespace tokenization; the
provider must use the same convention.
"""

from __future__ import annotations

import json
import os
import select
import shlex
import socket
import subprocess
import time
from dataclasses import dataclass
from typing import Sequence, Union

from .corpus import SentencePair
from .errors import AlignmentError, AlignmentUnavailable, InputError, ProtocolError


@dataclass(frozen=True)
class AlignmentLinks:
    links: frozenset  # of (source index, target index)
    src_len: int
    tgt_len: int


def parse_pharaoh(line: str, src_len: int, tgt_len: int, where: str = "") -> AlignmentLinks:
    """Parse whitespace-separated 0-indexed "i-j" pairs; duplicates collapse."""
    ctx = f"{where}: " if where else ""
    links = set()
    for item in line.split():
        i_str, sep, j_str = item.partition("-")
        if not sep or not i_str.isdigit() or not j_str.isdigit():
            raise AlignmentError(f"{ctx}malformed alignment token {item!r}")
        i, j = int(i_str), int(j_str)
        if i >= src_len or j >= tgt_len:
            raise AlignmentError(
                f"{ctx}link {i}-{j} out of range for token counts ({src_len}, {tgt_len})"
            )
        links.add((i, j))
    return AlignmentLinks(frozenset(links), src_len, tgt_len)


class DiagonalProvider:
    """Test stub: aligns token i to token i while both sides have one."""

    def links_for(self, pair: SentencePair) -> AlignmentLinks:
        src_len = len(pair.source.split())
        tgt_len = len(pair.target.split())
        n = min(src_len, tgt_len)
        return AlignmentLinks(frozenset((i, i) for i in range(n)), src_len, tgt_len)

    def close(self) -> None:
        pass


class FileProvider:
    """One Pharaoh line per corpus line; pairs must be consumed in ascending
    id order (ids are input line numbers, so the file stays line-aligned even
    when malformed corpus lines were skipped)."""

    def __init__(self, path: str):
        try:
            self._stream = open(path, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot open alignment file {path!r}: {exc}") from exc
        self._path = path
        self._next_line = 0

    def links_for(self, pair: SentencePair) -> AlignmentLinks:
        if pair.id < self._next_line:
            raise InputError(
                f"alignment file {self._path!r}: pairs consumed out of order "
                f"(pair {pair.id} after line {self._next_line})"
            )
        line = None
        while self._next_line <= pair.id:
            line = self._stream.readline()
            if not line:
                raise InputError(
                    f"alignment file {self._path!r} exhausted at line "
                    f"{self._next_line} before pair {pair.id}"
                )
            self._next_line += 1
        return parse_pharaoh(
            line.rstrip("\n"),
            len(pair.source.split()),
            len(pair.target.split()),
            where=f"{self._path}:{pair.id}",
        )

    def close(self) -> None:
        self._stream.close()


class _LineChannel:
    """Newline-delimited text over a byte stream with per-read timeouts."""

    def __init__(self) -> None:
        self._buf = b""

    def _read_some(self, timeout: float) -> bytes:
        raise NotImplementedError

    def send_line(self, text: str) -> None:
        raise NotImplementedError

    def recv_line(self, timeout: float) -> str:
        deadline = time.monotonic() + timeout
        while b"\n" not in self._buf:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise TimeoutError
            chunk = self._read_some(remaining)
            if not chunk:
                raise ProtocolError("sidecar closed its stream mid-conversation")
            self._buf += chunk
        line, _, self._buf = self._buf.partition(b"\n")
        return line.decode("utf-8")

    def close(self) -> None:
        pass


class ProcessChannel(_LineChannel):
    def __init__(self, command: Union[str, Sequence[str]]):
        super().__init__()
        argv = shlex.split(command) if isinstance(command, str) else list(command)
        try:
            self._proc = subprocess.Popen(
                argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE
            )
        except OSError as exc:
            raise InputError(f"cannot start sidecar {argv!r}: {exc}") from exc

    def send_line(self, text: str) -> None:
        assert self._proc.stdin is not None
        try:
            self._proc.stdin.write(text.encode("utf-8") + b"\n")
            self._proc.stdin.flush()
        except (OSError, ValueError) as exc:
            raise ProtocolError(f"sidecar stdin write failed: {exc}") from exc

    def _read_some(self, timeout: float) -> bytes:
        assert self._proc.stdout is not None
        fd = self._proc.stdout.fileno()
        ready, _, _ = select.select([fd], [], [], timeout)
        if not ready:
            raise TimeoutError
        return os.read(fd, 65536)

    def close(self) -> None:
        for stream in (self._proc.stdin, self._proc.stdout):
            if stream is not None:
                try:
                    stream.close()
                except OSError:
                    pass
        self._proc.terminate()
        try:
            self._proc.wait(timeout=5)
        except subprocess.TimeoutExpired:
            self._proc.kill()


class TcpChannel(_LineChannel):
    def __init__(self, host: str, port: int):
        super().__init__()
        try:
            self._sock = socket.create_connection((host, port), timeout=10)
        except OSError as exc:
            raise InputError(f"cannot connect to sidecar at {host}:{port}: {exc}") from exc
        self._sock.setblocking(False)

    def send_line(self, text: str) -> None:
        data = text.encode("utf-8") + b"\n"
        self._sock.setblocking(True)
        try:
            self._sock.sendall(data)
        except OSError as exc:
            raise ProtocolError(f"sidecar socket write failed: {exc}") from exc
        finally:
            self._sock.setblocking(False)

    def _read_some(self, timeout: float) -> bytes:
        ready, _, _ = select.select([self._sock], [], [], timeout)
        if not ready:
            raise TimeoutError
        return self._sock.recv(65536)

    def close(self) -> None:
        try:
            self._sock.close()
        except OSError:
            pass


class SidecarProvider:
    """Client side of the sidecar wire protocol.

    Request:  {"id": int, "src": [tokens], "tgt": [tokens]}
    Response: {"id": int, "links": [[i, j], ...]} or {"id": int, "error": msg}

    One request is outstanding per connection. A timeout marks the pair
    alignment-unavailable (the id is remembered so a late response can be
    discarded instead of poisoning the stream); a reply for any other id is a
    protocol violation and fatal.
    """

    def __init__(self, channel: _LineChannel, timeout: float = 10.0):
        self._channel = channel
        self._timeout = timeout
        self._timed_out: set[int] = set()

    def links_for(self, pair: SentencePair) -> AlignmentLinks:
        src = pair.source.split()
        tgt = pair.target.split()
        request = json.dumps({"id": pair.id, "src": src, "tgt": tgt}, ensure_ascii=False)
        self._channel.send_line(request)
        while True:
            try:
                line = self._channel.recv_line(self._timeout)
            except TimeoutError:
                self._timed_out.add(pair.id)
                raise AlignmentUnavailable(
                    f"sidecar timed out after {self._timeout}s for pair {pair.id}"
                ) from None
            try:
                obj = json.loads(line)
                response_id = obj["id"]
            except (ValueError, KeyError, TypeError) as exc:
                raise ProtocolError(f"unparseable sidecar response: {line!r}") from exc
            if response_id in self._timed_out and response_id != pair.id:
                self._timed_out.discard(response_id)
                continue  # late answer to a timed-out request
            if response_id != pair.id:
                raise ProtocolError(
                    f"sidecar answered id {response_id!r} while {pair.id} was outstanding: {line!r}"
                )
            if obj.get("error"):
                raise AlignmentUnavailable(
                    f"sidecar error for pair {pair.id}: {obj['error']}"
                )
            raw_links = obj.get("links")
            if not isinstance(raw_links, list):
                raise ProtocolError(f"sidecar response without links: {line!r}")
            links = set()
            for item in raw_links:
                if (
                    not isinstance(item, (list, tuple))
                    or len(item) != 2
                    or not all(isinstance(x, int) for x in item)
                    or not (0 <= item[0] < len(src))
                    or not (0 <= item[1] < len(tgt))
                ):
                    raise ProtocolError(f"sidecar link out of contract: {item!r} in {line!r}")
                links.add((item[0], item[1]))
            return AlignmentLinks(frozenset(links), len(src), len(tgt))

    def close(self) -> None:
        self._channel.close()


Provider = Union[DiagonalProvider, FileProvider, SidecarProvider]


def align(pair: SentencePair, provider: Provider) -> AlignmentLinks:
    """Alignment links for one pair under whitespace tokenization."""
    return provider.links_for(pair)


def provider_from_spec(spec: str, timeout: float = 10.0) -> Provider:
    """Build a provider from a config string.

    Accepted forms: ``diagonal``, ``file:PATH``, ``sidecar-cmd:COMMAND``,
    ``sidecar-tcp:HOST:PORT``.
    """
    if spec == "diagonal":
        return DiagonalProvider()
    kind, sep, rest = spec.partition(":")
    if not sep or not rest:
        raise InputError(f"bad alignment provider spec {spec!r}")
    if kind == "file":
        return FileProvider(rest)
    if kind == "sidecar-cmd":
        return SidecarProvider(ProcessChannel(rest), timeout=timeout)
    if kind == "sidecar-tcp":
        host, sep, port = rest.rpartition(":")
        if not sep or not port.isdigit():
            raise InputError(f"bad sidecar endpoint {rest!r} (expected HOST:PORT)")
        return SidecarProvider(TcpChannel(host, int(port)), timeout=timeout)
    raise InputError(f"unknown alignment provider kind {kind!r}")
