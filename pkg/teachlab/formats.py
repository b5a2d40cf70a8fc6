"""Text codecs for teacher, tournament and witness-family files, plus CSV output."""
import csv
import logging
from math import comb
from typing import Iterable, List, Optional, Sequence

import networkx as nx
import numpy as np

from teachlab.concepts import ClassFormatError, Concept, ConceptClass, ConceptNotInClassError, InstanceSet
from teachlab.johnson import KSetFamily
from teachlab.teachers import NCTeacher
from teachlab.tournaments import Tournament, TournamentFormatError, pair_rank

logger = logging.getLogger(__name__)


class TeacherFormatError(ValueError):
    pass


class FamilyFormatError(ValueError):
    pass


def _content_lines(text: str) -> List[str]:
    return [line.strip() for line in text.splitlines() if line.strip() and not line.strip().startswith('#')]


def _parse_header(line: str, keys: Sequence[str], error) -> List[int]:
    """Parse `k1=<int> k2=<int> ...` with exactly the given keys in order."""
    parts = line.split()
    if len(parts) != len(keys):
        raise error(f'Malformed header "{line}", expected {" ".join(f"{key}=<int>" for key in keys)}.')
    values = []
    for part, key in zip(parts, keys):
        name, _, raw = part.partition('=')
        if name != key:
            raise error(f'Malformed header "{line}", expected "{key}=".')
        try:
            values.append(int(raw))
        except ValueError:
            raise error(f'Header value "{raw}" for {key} is not an integer.')
    return values


def _parse_members(text: str, n: int, error) -> List[int]:
    try:
        members = [int(x) for x in text.split()]
    except ValueError:
        raise error(f'Instance list "{text}" is not a list of integers.')
    if any(not 1 <= x <= n for x in members):
        raise error(f'Instance list "{text}" leaves domain [{n}].')
    if members != sorted(set(members)):
        raise error(f'Instance list "{text}" must be strictly ascending.')
    return members


def serialize_teacher(t: NCTeacher) -> str:
    lines = [f'n={t.k.n} d={t.order}']
    for c, s in zip(t.k, t.sets):
        lines.append(' '.join([c.to_bits(), ':'] + [str(x) for x in s.members()]))
    return '\n'.join(lines) + '\n'


def parse_teacher(text: str, k: ConceptClass) -> NCTeacher:
    """Read a teacher for the class k; every concept of k must appear exactly once, in any order."""
    lines = _content_lines(text)
    if not lines:
        raise TeacherFormatError('Missing header "n=<int> d=<int>".')
    n, d = _parse_header(lines[0], ('n', 'd'), TeacherFormatError)
    if n != k.n:
        raise TeacherFormatError(f'Teacher is over [{n}] but the class is over [{k.n}].')
    sets: List[Optional[InstanceSet]] = [None] * len(k)
    for line_no, line in enumerate(lines[1:], start=2):
        bits, colon, rest = line.partition(':')
        if not colon:
            raise TeacherFormatError(f'Line {line_no}: expected "<bits> : <instances>".')
        bits = bits.strip()
        if len(bits) != n:
            raise TeacherFormatError(f'Line {line_no}: expected {n} labels, got {len(bits)}.')
        try:
            i = k.index_of(Concept.from_bits(bits))
        except (ClassFormatError, ConceptNotInClassError) as e:
            raise TeacherFormatError(f'Line {line_no}: {e}')
        if sets[i] is not None:
            raise TeacherFormatError(f'Line {line_no}: concept {bits} is taught twice.')
        members = _parse_members(rest, n, TeacherFormatError)
        if len(members) > d:
            raise TeacherFormatError(f'Line {line_no}: teaching set of size {len(members)} exceeds d={d}.')
        sets[i] = InstanceSet.from_members(n, members)
    missing = [k[i].to_bits() for i, s in enumerate(sets) if s is None]
    if missing:
        raise TeacherFormatError(f'No teaching set given for {", ".join(missing)}.')
    teacher = NCTeacher(k, sets)
    if teacher.order != d:
        raise TeacherFormatError(f'Header says d={d} but the largest teaching set has {teacher.order} instances.')
    return teacher


def serialize_tournament(g: Tournament) -> str:
    return '\n'.join([f'n={g.n}'] + [f'{i} {j}' for i, j in g.edges()]) + '\n'


def parse_tournament(text: str) -> Tournament:
    lines = _content_lines(text)
    if not lines:
        raise TournamentFormatError('Missing header "n=<int>".')
    n, = _parse_header(lines[0], ('n',), TournamentFormatError)
    if n < 1:
        raise TournamentFormatError(f'A tournament needs a positive number of players, got {n}.')
    if len(lines) - 1 != comb(n, 2):
        raise TournamentFormatError(f'Expected {comb(n, 2)} edges for {n} players, got {len(lines) - 1}.')
    orientation = np.zeros(comb(n, 2), dtype=bool)
    seen = set()
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, n + 1))
    for line_no, line in enumerate(lines[1:], start=2):
        parts = line.split()
        try:
            i, j = (int(x) for x in parts)
        except ValueError:
            raise TournamentFormatError(f'Line {line_no}: expected "<i> <j>", got "{line}".')
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise TournamentFormatError(f'Line {line_no}: ({i}, {j}) is not an edge between two players of [{n}].')
        pair = (min(i, j), max(i, j))
        if pair in seen:
            raise TournamentFormatError(f'Line {line_no}: pair {pair} is oriented twice.')
        seen.add(pair)
        orientation[pair_rank(n, *pair)] = i < j
        graph.add_edge(i, j)
    if not nx.tournament.is_tournament(graph):
        raise TournamentFormatError('Edges do not form a tournament.')
    return Tournament(n, orientation)


def serialize_family(f: KSetFamily) -> str:
    lines = [f'n={f.n} k={f.k}'] + [' '.join(str(x) for x in members) for members in f.member_lists()]
    return '\n'.join(lines) + '\n'


def parse_family(text: str) -> KSetFamily:
    """Header `n=<int> k=<int>`, then one ascending k-subset per line."""
    lines = _content_lines(text)
    if not lines:
        raise FamilyFormatError('Missing header "n=<int> k=<int>".')
    n, k = _parse_header(lines[0], ('n', 'k'), FamilyFormatError)
    members = []
    for line in lines[1:]:
        subset = _parse_members(line, n, FamilyFormatError)
        if len(subset) != k:
            raise FamilyFormatError(f'"{line}" is not a {k}-subset.')
        members.append(subset)
    family = KSetFamily.from_members(n, k, members)
    if len(family) != len(members):
        raise FamilyFormatError('A k-subset is listed twice.')
    return family


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[str]]):
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
    logger.info(f'Wrote CSV {path}')


def read_text(path: str) -> str:
    with open(path, encoding='utf-8') as f:
        return f.read()


def write_text(path: str, text: str):
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)
    logger.info(f'Wrote {path}')
