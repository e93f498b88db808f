"""Line-oriented workspace format, driver, and report emission.

Declarations (spaces, maps, bundles, connections, fields, sections) are
elaborated in order; directives (check / compute) run in declaration order
and produce a deterministic report.  The grammar:

    space NAME = R DIM
    map NAME : SPACE -> SPACE { expr, ..., expr }
    bundle NAME = tangent SPACE
    bundle NAME = trivial SPACE DIM
    connection NAME on BUNDLE { Gamma[k][i][j] = expr ... }
    field NAME on SPACE { expr, ..., expr }
    section NAME of BUNDLE { expr, ..., expr }
    check tangent-axioms SPACE | check bundle NAME
        | check connection NAME | check diff-object DIM
    compute covariant CONN FIELD SECTION
        | compute curvature-tensor CONN FIELD FIELD SECTION
        | compute torsion-tensor CONN FIELD FIELD
        | compute curvature CONN | compute torsion CONN

`#` starts a comment; brace blocks may span lines; connection entries are
separated by commas or newlines and unlisted Gamma entries are zero.
"""

from __future__ import annotations

import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .axioms import (VerificationResult, generate_monomial_corpus,
                     verify_tangent_axioms)
from .bundles import (DiffBundle, standard_diff_object, tangent_bundle_of,
                      trivial_bundle, verify_diff_bundle, verify_diff_object)
from .connections import (BundleSection, ChristoffelField, Connection,
                          VectorField, connection_from_christoffel,
                          covariant_derivative, curvature_morphism,
                          curvature_tensor, torsion_morphism, torsion_tensor,
                          verify_full_connection)
from .poly import ParseError, PolyMap, poly_parse
from .tangent import DEFAULT_MAX_TANGENT_ORDER, InputError


class WorkspaceError(ValueError):
    """Input error with source location."""

    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# Workspace model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MapDecl:
    name: str
    domain_space: str
    codomain_space: str
    pmap: PolyMap


@dataclass(frozen=True)
class BundleDecl:
    name: str
    space: str
    bundle: DiffBundle
    is_tangent: bool


@dataclass(frozen=True)
class ConnectionDecl:
    name: str
    bundle_name: str
    gamma: ChristoffelField
    connection: Connection


@dataclass(frozen=True)
class FieldDecl:
    name: str
    space: str
    vf: VectorField


@dataclass(frozen=True)
class SectionDecl:
    name: str
    bundle_name: str
    section: BundleSection


@dataclass(frozen=True)
class CheckDirective:
    kind: str     # tangent-axioms | bundle | connection | diff-object
    target: str   # space/bundle/connection name, or the dimension as text


@dataclass(frozen=True)
class ComputeDirective:
    kind: str     # covariant | curvature-tensor | torsion-tensor
    #             # | curvature | torsion
    args: tuple[str, ...]

    @property
    def label(self) -> str:
        return " ".join((self.kind,) + self.args)


@dataclass
class Workspace:
    spaces: dict[str, int] = field(default_factory=dict)
    maps: dict[str, MapDecl] = field(default_factory=dict)
    bundles: dict[str, BundleDecl] = field(default_factory=dict)
    connections: dict[str, ConnectionDecl] = field(default_factory=dict)
    fields: dict[str, FieldDecl] = field(default_factory=dict)
    sections: dict[str, SectionDecl] = field(default_factory=dict)
    directives: list[CheckDirective | ComputeDirective] = \
        field(default_factory=list)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


@dataclass
class _Source:
    """Joined statement text with a char -> (line, col) position map."""

    text: str
    positions: list[tuple[int, int]]

    def loc(self, offset: int) -> tuple[int, int]:
        if offset >= len(self.positions):
            return self.positions[-1] if self.positions else (1, 1)
        return self.positions[offset]


def _gather_statements(text: str) -> list[_Source]:
    lines = text.splitlines()
    statements: list[_Source] = []
    buffer = ""
    buffer_pos: list[tuple[int, int]] = []
    depth = 0
    for line_no, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0]
        if not body.strip() and depth == 0:
            continue
        if buffer:
            buffer += "\n"
            buffer_pos.append((line_no, 1))
        for col, ch in enumerate(body, start=1):
            buffer += ch
            buffer_pos.append((line_no, col))
        depth += body.count("{") - body.count("}")
        if depth < 0:
            raise WorkspaceError("unmatched '}'", line_no)
        if depth == 0:
            if buffer.strip():
                statements.append(_Source(buffer, buffer_pos))
            buffer = ""
            buffer_pos = []
    if depth != 0:
        raise WorkspaceError("unterminated '{' block", len(lines) or 1)
    return statements


def _split_top_level(text: str, separators: str) -> list[tuple[int, str]]:
    """Split on separators outside parentheses; yields (offset, chunk)."""
    chunks: list[tuple[int, str]] = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in separators and depth == 0:
            chunks.append((start, text[start:i]))
            start = i + 1
    chunks.append((start, text[start:]))
    return [(off, chunk) for off, chunk in chunks if chunk.strip()]


_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_SPACE_RE = re.compile(rf"^\s*space\s+({_NAME})\s*=\s*R\s+(\d+)\s*$")
_MAP_RE = re.compile(
    rf"^\s*map\s+({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})\s*\{{(.*)\}}\s*$",
    re.DOTALL)
_BUNDLE_TANGENT_RE = re.compile(
    rf"^\s*bundle\s+({_NAME})\s*=\s*tangent\s+({_NAME})\s*$")
_BUNDLE_TRIVIAL_RE = re.compile(
    rf"^\s*bundle\s+({_NAME})\s*=\s*trivial\s+({_NAME})\s+(\d+)\s*$")
_CONNECTION_RE = re.compile(
    rf"^\s*connection\s+({_NAME})\s+on\s+({_NAME})\s*\{{(.*)\}}\s*$",
    re.DOTALL)
_FIELD_RE = re.compile(
    rf"^\s*field\s+({_NAME})\s+on\s+({_NAME})\s*\{{(.*)\}}\s*$", re.DOTALL)
_SECTION_RE = re.compile(
    rf"^\s*section\s+({_NAME})\s+of\s+({_NAME})\s*\{{(.*)\}}\s*$", re.DOTALL)
_GAMMA_RE = re.compile(
    r"^\s*Gamma\[(\d+)\]\[(\d+)\]\[(\d+)\]\s*=\s*(.+?)\s*$", re.DOTALL)
_CHECK_RE = re.compile(
    r"^\s*check\s+(tangent-axioms|bundle|connection|diff-object)\s+(\S+)\s*$")
_COMPUTE_RE = re.compile(
    rf"^\s*compute\s+(covariant|curvature-tensor|torsion-tensor|curvature|"
    rf"torsion)((?:\s+{_NAME})+)\s*$")

_COMPUTE_ARITY = {"covariant": 3, "curvature-tensor": 4, "torsion-tensor": 3,
                  "curvature": 1, "torsion": 1}


def _parse_expr(src: _Source, offset: int, chunk: str, dim: int):
    stripped_lead = len(chunk) - len(chunk.lstrip())
    try:
        return poly_parse(chunk.strip(), dim)
    except ParseError as exc:
        line, col = src.loc(offset + stripped_lead + exc.offset)
        raise WorkspaceError(str(exc), line, col) from exc


def _parse_expr_list(src: _Source, payload_offset: int, payload: str,
                     dim: int, expected: int, what: str):
    chunks = _split_top_level(payload, ",")
    if len(chunks) != expected:
        line, col = src.loc(payload_offset)
        raise WorkspaceError(
            f"{what} needs {expected} expressions, found {len(chunks)}",
            line, col)
    return [_parse_expr(src, payload_offset + off, chunk, dim)
            for off, chunk in chunks]


class _Elaborator:
    def __init__(self):
        self.ws = Workspace()

    def _fresh(self, table: dict, name: str, kind: str, src: _Source) -> None:
        if name in table:
            line, col = src.loc(0)
            raise WorkspaceError(f"duplicate {kind} name {name!r}", line, col)

    def _space_dim(self, name: str, src: _Source, offset: int = 0) -> int:
        if name not in self.ws.spaces:
            line, col = src.loc(offset)
            raise WorkspaceError(f"unknown space {name!r}", line, col)
        return self.ws.spaces[name]

    def statement(self, src: _Source) -> None:
        text = src.text
        if m := _SPACE_RE.match(text):
            name, dim = m.group(1), int(m.group(2))
            self._fresh(self.ws.spaces, name, "space", src)
            self.ws.spaces[name] = dim
            return
        if m := _MAP_RE.match(text):
            name, dom, cod, payload = m.groups()
            self._fresh(self.ws.maps, name, "map", src)
            dom_dim = self._space_dim(dom, src, m.start(2))
            cod_dim = self._space_dim(cod, src, m.start(3))
            comps = _parse_expr_list(src, m.start(4), payload, dom_dim,
                                     cod_dim, f"map {name!r}")
            self.ws.maps[name] = MapDecl(
                name, dom, cod, PolyMap.from_components(dom_dim, comps))
            return
        if m := _BUNDLE_TANGENT_RE.match(text):
            name, space = m.groups()
            self._fresh(self.ws.bundles, name, "bundle", src)
            dim = self._space_dim(space, src, m.start(2))
            self.ws.bundles[name] = BundleDecl(
                name, space, tangent_bundle_of(dim), True)
            return
        if m := _BUNDLE_TRIVIAL_RE.match(text):
            name, space, fiber = m.groups()
            self._fresh(self.ws.bundles, name, "bundle", src)
            dim = self._space_dim(space, src, m.start(2))
            self.ws.bundles[name] = BundleDecl(
                name, space, trivial_bundle(dim, int(fiber)), False)
            return
        if m := _CONNECTION_RE.match(text):
            name, bundle_name, payload = m.groups()
            self._fresh(self.ws.connections, name, "connection", src)
            decl = self._bundle(bundle_name, src, m.start(2))
            if not decl.is_tangent:
                line, col = src.loc(m.start(2))
                raise WorkspaceError(
                    "connections are declared on tangent bundles only",
                    line, col)
            dim = decl.bundle.base_dim
            entries = {}
            for off, chunk in _split_top_level(payload, ",\n"):
                gm = _GAMMA_RE.match(chunk)
                if gm is None:
                    line, col = src.loc(m.start(3) + off)
                    raise WorkspaceError(
                        f"expected Gamma[k][i][j] = expr, found "
                        f"{chunk.strip()!r}", line, col)
                k, i, j = int(gm.group(1)), int(gm.group(2)), int(gm.group(3))
                if not (1 <= k <= dim and 1 <= i <= dim and 1 <= j <= dim):
                    line, col = src.loc(m.start(3) + off)
                    raise WorkspaceError(
                        f"index out of range: Gamma[{k}][{i}][{j}] on a "
                        f"dimension-{dim} base", line, col)
                if (k, i, j) in entries:
                    line, col = src.loc(m.start(3) + off)
                    raise WorkspaceError(
                        f"duplicate entry Gamma[{k}][{i}][{j}]", line, col)
                entries[(k, i, j)] = _parse_expr(
                    src, m.start(3) + off + gm.start(4), gm.group(4), dim)
            gamma = ChristoffelField.from_entries(dim, entries)
            self.ws.connections[name] = ConnectionDecl(
                name, bundle_name, gamma, connection_from_christoffel(gamma))
            return
        if m := _FIELD_RE.match(text):
            name, space, payload = m.groups()
            self._fresh(self.ws.fields, name, "field", src)
            dim = self._space_dim(space, src, m.start(2))
            comps = _parse_expr_list(src, m.start(3), payload, dim, dim,
                                     f"field {name!r}")
            self.ws.fields[name] = FieldDecl(
                name, space, VectorField(dim, PolyMap.from_components(
                    dim, comps)))
            return
        if m := _SECTION_RE.match(text):
            name, bundle_name, payload = m.groups()
            self._fresh(self.ws.sections, name, "section", src)
            decl = self._bundle(bundle_name, src, m.start(2))
            B = decl.bundle
            comps = _parse_expr_list(src, m.start(3), payload, B.base_dim,
                                     B.fiber_dim, f"section {name!r}")
            fiber = PolyMap.from_components(B.base_dim, comps)
            self.ws.sections[name] = SectionDecl(
                name, bundle_name, BundleSection.from_fiber(B, fiber))
            return
        if m := _CHECK_RE.match(text):
            kind, target = m.groups()
            self._validate_check(kind, target, src, m.start(2))
            self.ws.directives.append(CheckDirective(kind, target))
            return
        if m := _COMPUTE_RE.match(text):
            kind = m.group(1)
            args = tuple(m.group(2).split())
            if len(args) != _COMPUTE_ARITY[kind]:
                line, col = src.loc(m.start(2))
                raise WorkspaceError(
                    f"compute {kind} takes {_COMPUTE_ARITY[kind]} names, "
                    f"found {len(args)}", line, col)
            self._validate_compute(kind, args, src, m.start(2))
            self.ws.directives.append(ComputeDirective(kind, args))
            return
        line, col = src.loc(0)
        raise WorkspaceError(f"unrecognized statement "
                             f"{text.strip().splitlines()[0]!r}", line, col)

    def _bundle(self, name: str, src: _Source, offset: int) -> BundleDecl:
        if name not in self.ws.bundles:
            line, col = src.loc(offset)
            raise WorkspaceError(f"unknown bundle {name!r}", line, col)
        return self.ws.bundles[name]

    def _validate_check(self, kind: str, target: str, src: _Source,
                        offset: int) -> None:
        line, col = src.loc(offset)
        if kind == "tangent-axioms":
            if target not in self.ws.spaces:
                raise WorkspaceError(f"unknown space {target!r}", line, col)
        elif kind == "bundle":
            if target not in self.ws.bundles:
                raise WorkspaceError(f"unknown bundle {target!r}", line, col)
        elif kind == "connection":
            if target not in self.ws.connections:
                raise WorkspaceError(f"unknown connection {target!r}",
                                     line, col)
        elif kind == "diff-object":
            if not target.isdigit():
                raise WorkspaceError(
                    f"check diff-object needs a dimension, found {target!r}",
                    line, col)

    def _validate_compute(self, kind: str, args: tuple[str, ...],
                          src: _Source, offset: int) -> None:
        line, col = src.loc(offset)
        conn = args[0]
        if conn not in self.ws.connections:
            raise WorkspaceError(f"unknown connection {conn!r}", line, col)
        decl = self.ws.connections[conn]
        base_space = self.ws.bundles[decl.bundle_name].space
        field_args = {"covariant": args[1:2], "curvature-tensor": args[1:3],
                      "torsion-tensor": args[1:3], "curvature": (),
                      "torsion": ()}[kind]
        for fname in field_args:
            if fname not in self.ws.fields:
                raise WorkspaceError(f"unknown field {fname!r}", line, col)
            if self.ws.fields[fname].space != base_space:
                raise WorkspaceError(
                    f"field {fname!r} lives on "
                    f"{self.ws.fields[fname].space!r}, not the connection "
                    f"base {base_space!r}", line, col)
        if kind in ("covariant", "curvature-tensor"):
            sname = args[-1]
            if sname not in self.ws.sections:
                raise WorkspaceError(f"unknown section {sname!r}", line, col)
            if self.ws.sections[sname].bundle_name != decl.bundle_name:
                raise WorkspaceError(
                    f"section {sname!r} is not a section of bundle "
                    f"{decl.bundle_name!r}", line, col)


def parse_workspace(text: str) -> Workspace:
    """Parse and elaborate a workspace; raises WorkspaceError on bad input."""
    elaborator = _Elaborator()
    for statement in _gather_statements(text):
        elaborator.statement(statement)
    return elaborator.ws


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunOptions:
    max_degree: int = 2
    max_tangent_order: int = DEFAULT_MAX_TANGENT_ORDER
    jobs: int = 1
    functoriality_pairs: int = 30


@dataclass(frozen=True)
class CheckEntry:
    check_id: str
    status: str
    witness: tuple[str, ...] = ()
    degree_bound: int | None = None


@dataclass(frozen=True)
class ComputeEntry:
    name: str
    result: tuple[str, ...]


@dataclass(frozen=True)
class Report:
    checks: tuple[CheckEntry, ...]
    computes: tuple[ComputeEntry, ...]

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)


def _check_entries(target: str,
                   results: list[VerificationResult]) -> list[CheckEntry]:
    return [CheckEntry(f"{target}:{r.name}", r.status, r.witness,
                       r.degree_bound) for r in results]


def _run_check(ws: Workspace, d: CheckDirective,
               opts: RunOptions) -> list[CheckEntry]:
    if d.kind == "tangent-axioms":
        dim = ws.spaces[d.target]
        corpus = [(name, f) for name, f in generate_monomial_corpus(
            max_dim=max(dim, 1))
            if f.domain_dim == dim]
        for decl in ws.maps.values():
            if decl.domain_space == d.target:
                corpus.append((decl.name, decl.pmap))
        results = verify_tangent_axioms(
            [dim], corpus, max_degree=opts.max_degree,
            functoriality_pairs=opts.functoriality_pairs)
        return _check_entries(d.target, results)
    if d.kind == "bundle":
        bundle = ws.bundles[d.target].bundle
        return _check_entries(d.target, verify_diff_bundle(
            bundle, opts.max_degree, opts.max_tangent_order))
    if d.kind == "connection":
        conn = ws.connections[d.target].connection
        return _check_entries(d.target, verify_full_connection(conn))
    if d.kind == "diff-object":
        dim = int(d.target)
        return _check_entries(d.target, verify_diff_object(
            standard_diff_object(dim), opts.max_degree))
    raise InputError(f"unknown check kind {d.kind!r}")


def _run_compute(ws: Workspace, d: ComputeDirective) -> ComputeEntry:
    decl = ws.connections[d.args[0]]
    conn = decl.connection
    if d.kind == "covariant":
        vf = ws.fields[d.args[1]].vf
        sec = ws.sections[d.args[2]].section
        result = covariant_derivative(conn, vf, sec)
        return ComputeEntry(d.label, tuple(result.s.to_strs()))
    if d.kind == "curvature-tensor":
        u = ws.fields[d.args[1]].vf
        v = ws.fields[d.args[2]].vf
        sec = ws.sections[d.args[3]].section
        result = curvature_tensor(conn, u, v, sec)
        return ComputeEntry(d.label, tuple(result.s.to_strs()))
    if d.kind == "torsion-tensor":
        u = ws.fields[d.args[1]].vf
        v = ws.fields[d.args[2]].vf
        result = torsion_tensor(conn, u, v)
        return ComputeEntry(d.label, tuple(result.sigma.to_strs()))
    if d.kind == "curvature":
        return ComputeEntry(d.label, tuple(curvature_morphism(conn).to_strs()))
    if d.kind == "torsion":
        return ComputeEntry(d.label, tuple(torsion_morphism(conn).to_strs()))
    raise InputError(f"unknown compute kind {d.kind!r}")


def run_workspace(ws: Workspace, opts: RunOptions | None = None,
                  checks_only: bool = False,
                  computes_only: bool = False) -> Report:
    """Execute directives in order; check results sort by axiom id within
    each directive, and the report is byte-stable across jobs settings."""
    opts = opts or RunOptions()
    check_dirs = [d for d in ws.directives if isinstance(d, CheckDirective)
                  and not computes_only]
    tasks: list[Callable[[], list[CheckEntry]]] = \
        [lambda d=d: _run_check(ws, d, opts) for d in check_dirs]
    if opts.jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=opts.jobs) as pool:
            grouped = list(pool.map(lambda t: t(), tasks))
    else:
        grouped = [t() for t in tasks]
    checks = tuple(entry for group in grouped for entry in group)
    computes = tuple(_run_compute(ws, d) for d in ws.directives
                     if isinstance(d, ComputeDirective) and not checks_only)
    return Report(checks, computes)


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


def emit_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        checks = []
        for c in report.checks:
            entry: dict = {"id": c.check_id, "status": c.status}
            if c.status == "fail" and c.witness:
                entry["witness"] = list(c.witness)
            if c.status == "not-verified" and c.degree_bound is not None:
                entry["degree_bound"] = c.degree_bound
            checks.append(entry)
        computes = [{"name": c.name, "result": list(c.result)}
                    for c in report.computes]
        payload = {"checks": checks, "computes": computes, "ok": report.ok}
        return json.dumps(payload, separators=(",", ":"))
    if fmt != "text":
        raise InputError(f"unknown report format {fmt!r}")
    lines = []
    for c in report.checks:
        line = f"check  {c.check_id:<58} {c.status}"
        if c.status == "fail" and c.witness:
            line += "  witness: " + "; ".join(c.witness)
        if c.status == "not-verified" and c.degree_bound is not None:
            line += f"  degree bound: {c.degree_bound}"
        lines.append(line)
    for c in report.computes:
        lines.append(f"compute {c.name}")
        lines.append("  = (" + ", ".join(c.result) + ")")
    passed = sum(1 for c in report.checks if c.status == "pass")
    lines.append(f"summary: {passed}/{len(report.checks)} checks passed; "
                 f"{'ok' if report.ok else 'NOT ok'}")
    return "\n".join(lines) + "\n"
