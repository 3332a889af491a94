"""Parsing and validation of TSPLIB-style CVRP instance files (EUC_2D)."""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CvrpInstance",
    "ParseError",
    "parse_instance",
    "load_instance",
    "build_distance_matrix",
    "bundled_data_dir",
    "instance_dir",
    "load_optima",
]

_HEADER_KEYS = {"NAME", "TYPE", "COMMENT", "DIMENSION", "CAPACITY", "EDGE_WEIGHT_TYPE"}
_SECTION_KEYS = {"NODE_COORD_SECTION", "DEMAND_SECTION", "DEPOT_SECTION"}

INSTANCE_DIR_ENV = "MFVRP_INSTANCES"


class ParseError(ValueError):
    """Raised when a .vrp file violates the expected CVRP dialect."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"{message} (line: {line!r})"
        super().__init__(message)


@dataclass(frozen=True)
class CvrpInstance:
    """A single CVRP dataset: depot at internal index 0, clients at 1..n_clients.

    Coordinates and demands are indexed by internal node id; file node 1 is
    the depot, file nodes 2..n map to clients 1..n-1.
    """

    name: str
    capacity: int
    coords: tuple  # of (x, y) int pairs
    demands: tuple  # of ints, demands[0] == 0
    declared_vehicles: int | None = None

    @property
    def n_nodes(self) -> int:
        return len(self.coords)

    @property
    def n_clients(self) -> int:
        return len(self.coords) - 1

    def __post_init__(self):
        if len(self.coords) != len(self.demands):
            raise ValueError("coords and demands must have equal length")
        if self.n_clients < 1:
            raise ValueError("instance needs at least one client")
        if self.demands[0] != 0:
            raise ValueError("depot demand must be zero")
        for c, d in enumerate(self.demands[1:], start=1):
            if d <= 0:
                raise ValueError(f"client {c} has non-positive demand {d}")
            if d > self.capacity:
                raise ValueError(f"client {c} demand {d} exceeds capacity {self.capacity}")

    def to_vrp(self) -> str:
        """Serialize back to the canonical .vrp text form (debug dump)."""
        lines = [
            f"NAME : {self.name}",
            "TYPE : CVRP",
            f"DIMENSION : {self.n_nodes}",
            "EDGE_WEIGHT_TYPE : EUC_2D",
            f"CAPACITY : {self.capacity}",
            "NODE_COORD_SECTION",
        ]
        for i, (x, y) in enumerate(self.coords, start=1):
            lines.append(f"{i} {x} {y}")
        lines.append("DEMAND_SECTION")
        for i, d in enumerate(self.demands, start=1):
            lines.append(f"{i} {d}")
        lines += ["DEPOT_SECTION", "1", "-1", "EOF", ""]
        return "\n".join(lines)


def _split_header(line):
    if ":" not in line:
        return None
    key, _, value = line.partition(":")
    return key.strip(), value.strip()


def parse_instance(text: str) -> CvrpInstance:
    """Parse the contents of a .vrp file into a validated CvrpInstance.

    File node 1 becomes the depot (internal index 0); file nodes 2..n become
    clients 1..n-1. Only the EUC_2D edge weight type is supported.
    """
    headers = {}
    coords_by_id = {}
    demands_by_id = {}
    depot_nodes = []
    section = None

    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        upper = line.upper()
        if upper == "EOF":
            break
        if upper in _SECTION_KEYS:
            section = upper
            continue
        if section is None or (":" in line and _split_header(line)[0].isupper()
                               and not line[0].isdigit() and section != "DEPOT_SECTION"):
            parsed = _split_header(line)
            if parsed is None:
                raise ParseError("malformed header entry", raw)
            key, value = parsed
            if key not in _HEADER_KEYS:
                raise ParseError(f"unknown header key {key!r}", raw)
            headers[key] = value
            continue
        if section == "NODE_COORD_SECTION":
            parts = line.split()
            if len(parts) != 3:
                raise ParseError("expected 'id x y' triple in NODE_COORD_SECTION", raw)
            try:
                node, x, y = (int(p) for p in parts)
            except ValueError:
                raise ParseError("non-integer value in NODE_COORD_SECTION", raw)
            if node in coords_by_id:
                raise ParseError(f"duplicate node {node} in NODE_COORD_SECTION", raw)
            coords_by_id[node] = (x, y)
        elif section == "DEMAND_SECTION":
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("expected 'id demand' pair in DEMAND_SECTION", raw)
            try:
                node, demand = (int(p) for p in parts)
            except ValueError:
                raise ParseError("non-integer value in DEMAND_SECTION", raw)
            if node in demands_by_id:
                raise ParseError(f"duplicate node {node} in DEMAND_SECTION", raw)
            demands_by_id[node] = demand
        elif section == "DEPOT_SECTION":
            try:
                node = int(line)
            except ValueError:
                raise ParseError("non-integer value in DEPOT_SECTION", raw)
            if node != -1:
                depot_nodes.append(node)

    for key in ("DIMENSION", "CAPACITY"):
        if key not in headers:
            raise ParseError(f"missing {key} header")
    if "EDGE_WEIGHT_TYPE" not in headers:
        raise ParseError("missing EDGE_WEIGHT_TYPE header")
    if headers["EDGE_WEIGHT_TYPE"] != "EUC_2D":
        raise ParseError(f"unsupported EDGE_WEIGHT_TYPE {headers['EDGE_WEIGHT_TYPE']!r}")

    try:
        dimension = int(headers["DIMENSION"])
        capacity = int(headers["CAPACITY"])
    except ValueError:
        raise ParseError("DIMENSION and CAPACITY must be integers")

    if not coords_by_id:
        raise ParseError("missing NODE_COORD_SECTION")
    if not demands_by_id:
        raise ParseError("missing DEMAND_SECTION")
    if len(coords_by_id) != dimension:
        raise ParseError(
            f"DIMENSION is {dimension} but NODE_COORD_SECTION lists {len(coords_by_id)} nodes")
    if len(demands_by_id) != dimension:
        raise ParseError(
            f"DIMENSION is {dimension} but DEMAND_SECTION lists {len(demands_by_id)} nodes")
    if set(coords_by_id) != set(range(1, dimension + 1)):
        raise ParseError("NODE_COORD_SECTION node ids must be 1..DIMENSION")
    if set(demands_by_id) != set(range(1, dimension + 1)):
        raise ParseError("DEMAND_SECTION node ids must be 1..DIMENSION")
    if depot_nodes and depot_nodes != [1]:
        raise ParseError(f"DEPOT_SECTION must name file node 1, got {depot_nodes}")
    if demands_by_id[1] != 0:
        raise ParseError(f"depot demand must be zero, got {demands_by_id[1]}")

    name = headers.get("NAME", "unnamed")
    match = re.search(r"k(\d+)\s*$", name)
    declared = int(match.group(1)) if match else None

    coords = tuple(coords_by_id[i] for i in range(1, dimension + 1))
    demands = tuple(demands_by_id[i] for i in range(1, dimension + 1))
    try:
        return CvrpInstance(name=name, capacity=capacity, coords=coords,
                            demands=demands, declared_vehicles=declared)
    except ValueError as exc:
        raise ParseError(str(exc))


def load_instance(path) -> CvrpInstance:
    with open(path) as fh:
        return parse_instance(fh.read())


def build_distance_matrix(instance: CvrpInstance) -> np.ndarray:
    """Rounded-Euclidean arc matrix: d[i][j] = nint(||coords[i] - coords[j]||).

    Rounding is half-up to the nearest integer (floor(x + 0.5)), the
    convention under which the published Augerat optima are attained.
    """
    pts = np.asarray(instance.coords, dtype=float)
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    return np.floor(dist + 0.5).astype(np.int64)


def bundled_data_dir() -> str:
    """Directory holding the benchmark .vrp files shipped with the package."""
    return os.path.join(os.path.dirname(__file__), "data")


def instance_dir(override=None) -> str:
    """Resolve the instance directory: explicit arg, env var, then bundled data."""
    if override:
        return str(override)
    return os.environ.get(INSTANCE_DIR_ENV) or bundled_data_dir()


def load_optima(path=None) -> dict:
    """Known optima per instance name, used only for deviation reporting."""
    if path is None:
        path = os.path.join(bundled_data_dir(), "optima.csv")
    optima = {}
    with open(path) as fh:
        header = fh.readline()
        if header.strip() != "instance,optimum":
            raise ValueError(f"unexpected optima header: {header!r}")
        for line in fh:
            if not line.strip():
                continue
            name, value = line.strip().split(",")
            optima[name] = int(value)
    return optima
