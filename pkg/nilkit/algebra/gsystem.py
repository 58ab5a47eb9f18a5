import json

from nilkit.algebra.nilseq import NilSeq, parse_nilseq, level_varlist
from nilkit.core.exceptions import StructureError


class GSystem(object):
    """
    A nonempty ordered tuple of NilSeq sharing dimension and level.
    Order is significant: the last entry is the one a reduction acts on.
    """
    __slots__ = ('_entries', '_dim', '_level')

    def __init__(self, entries):
        entries = tuple(entries)
        if not entries:
            raise StructureError("A G-system needs at least one entry")
        for entry in entries:
            if not isinstance(entry, NilSeq):
                raise StructureError(
                    "G-system entries must be NilSeq, got {!r}".format(entry))
        dims = set(e.dim for e in entries)
        levels = set(e.level for e in entries)
        if len(dims) != 1:
            raise StructureError("Entries have dimensions {}".format(sorted(dims)))
        if len(levels) != 1:
            raise StructureError("Entries have levels {}".format(sorted(levels)))
        self._entries = entries
        self._dim = dims.pop()
        self._level = levels.pop()

    @property
    def entries(self):
        return self._entries

    @property
    def dim(self):
        return self._dim

    @property
    def level(self):
        return self._level

    @property
    def varlist(self):
        return level_varlist(self._level)

    @property
    def last(self):
        return self._entries[-1]

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __getitem__(self, index):
        return self._entries[index]

    def __eq__(self, other):
        if not isinstance(other, GSystem):
            return NotImplemented
        return self._entries == other._entries

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self._entries)

    def to_list(self):
        return [entry.to_list() for entry in self._entries]

    def serialize(self):
        return json.dumps(self.to_list())

    def to_json_dict(self):
        return {'level': self._level, 'entries': self.to_list()}

    @classmethod
    def from_json_dict(cls, data):
        level = int(data['level'])
        return cls(parse_nilseq(rows, level=level) for rows in data['entries'])

    def __repr__(self):
        return "GSystem(level={}, {})".format(self._level, self.serialize())
