import re
from pathlib import Path
from typing import Iterable, List, Sequence, Union

import structlog

from movoid.core.exceptions import GeometryError, PointSetFormatError
from movoid.geometry.projgeom import ProjectiveSpace, ProjectiveSubspace, subspace

logger = structlog.get_logger(__name__)

_HEADER = re.compile(r"^n\s*=\s*(\d+)\s+q\s*=\s*(\d+)$")

PathLike = Union[str, Path]


class PointSetRepository:
    """Repository for point sets stored in the `.pts` text format."""

    def __init__(self, space: ProjectiveSpace):
        """
        Initialize with the projective space the point sets live in.

        Args:
            space: Ambient PG(n, q); headers must match its n and q
        """
        self.space = space

    def parse(self, text: str, source: str = "<string>") -> List[int]:
        """
        Parse `.pts` content into sorted, de-duplicated ambient point indices.

        Args:
            text: File content
            source: Name used in error messages

        Returns:
            List[int]: Ambient indices of the points, increasing

        Raises:
            PointSetFormatError: On a malformed header or point line, with its line number
        """
        header_seen = False
        indices = set()
        width = self.space.n + 1
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not header_seen:
                match = _HEADER.match(line)
                if not match:
                    raise PointSetFormatError(source, number, f"expected header 'n=<n> q=<q>', got {line!r}")
                n, q = int(match.group(1)), int(match.group(2))
                if (n, q) != (self.space.n, self.space.q):
                    raise PointSetFormatError(
                        source, number, f"header n={n} q={q} does not match PG({self.space.n},{self.space.q})")
                header_seen = True
                continue
            try:
                vector = [int(x) for x in line.split(",")]
            except ValueError:
                raise PointSetFormatError(source, number, f"non-integer coordinate in {line!r}")
            if len(vector) != width:
                raise PointSetFormatError(source, number, f"expected {width} coordinates, got {len(vector)}")
            if any(not 0 <= x < self.space.q for x in vector):
                raise PointSetFormatError(source, number, f"coordinate out of range [0, {self.space.q})")
            if not any(vector):
                raise PointSetFormatError(source, number, "the zero vector is not a point")
            indices.add(self.space.point_index(vector))
        if not header_seen:
            raise PointSetFormatError(source, 1, "missing header 'n=<n> q=<q>'")
        return sorted(indices)

    def load(self, path: PathLike) -> List[int]:
        """Read a `.pts` file; points are normalized on load."""
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as e:
            raise PointSetFormatError(str(path), 0, f"cannot read file: {e}")
        indices = self.parse(text, str(path))
        logger.info("pointset_loaded", path=str(path), points=len(indices))
        return indices

    def render(self, indices: Iterable[int], comments: Sequence[str] = ()) -> str:
        lines = [f"# {c}" for c in comments]
        lines.append(f"n={self.space.n} q={self.space.q}")
        coords = self.space.coords
        for index in sorted(int(i) for i in indices):
            lines.append(",".join(str(int(x)) for x in coords[index]))
        return "\n".join(lines) + "\n"

    def save(self, path: PathLike, indices: Iterable[int], comments: Sequence[str] = ()) -> Path:
        """Write normalized points in enumeration order."""
        path = Path(path)
        path.write_text(self.render(indices, comments))
        logger.info("pointset_saved", path=str(path))
        return path


def parse_subspace(space: ProjectiveSpace, spec: str) -> ProjectiveSubspace:
    """
    Parse a subspace given as spanning vectors, e.g. "1,0,0,0;0,0,1,0".

    Raises:
        GeometryError: If a vector is malformed or the vectors span nothing
        FieldError: If a coordinate is not an element encoding
    """
    rows: List[List[int]] = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            rows.append([space.field.check_element(int(x)) for x in chunk.split(",")])
        except ValueError:
            raise GeometryError(f"malformed vector {chunk!r} in subspace {spec!r}")
    result = subspace(space.field, space.n, rows)
    if not result.basis:
        raise GeometryError(f"subspace {spec!r} is empty")
    return result

