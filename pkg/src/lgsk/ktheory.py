"""K-groups and Bowen-Franks groups of a λ-graph system.

From the leveled graph we extract, per level pair, the edge-count matrix
A_l and the 0/1 iota matrix I_l.  The level-l K0 group is the cokernel
of tI_l - tA_l and the level-l K1 group the kernel of the same matrix;
the inductive systems are connected by tI.  True inductive limits need
infinitely many levels, so towers carry an explicit stabilization
verdict over a sliding window instead of an unconditional limit:
Stabilized (window maps are isomorphisms), TorsionStabilized (torsion
frozen, free rank strictly growing - the Cantor-function-group shape),
or Undetermined.
"""

from dataclasses import dataclass

from . import intalg
from .errors import UndeterminedTower, ValidationError
from .intalg import FgAbelianGroup

DEFAULT_WINDOW = 3


@dataclass(frozen=True)
class MatrixSystem:
    a: tuple  # per level pair: edge-count matrix, m(l) x m(l+1)
    i: tuple  # per level pair: 0/1 iota matrix, same shape

    @property
    def pairs(self):
        return len(self.a)

    def sizes(self):
        if not self.a:
            return []
        return [len(self.a[0])] + [len(m[0]) for m in self.a]


def extract_matrix_system(lgs):
    """Edge-count and iota matrices in the lgs's vertex order."""
    a_list, i_list = [], []
    for l in range(lgs.L):
        src_index = {v.id: i for i, v in enumerate(lgs.vertices[l])}
        dst_index = {v.id: j for j, v in enumerate(lgs.vertices[l + 1])}
        a = [[0] * len(dst_index) for _ in src_index]
        for s, d, _lab in lgs.edges[l]:
            a[src_index[s]][dst_index[d]] += 1
        im = [[0] * len(dst_index) for _ in src_index]
        for child, parent in lgs.iota[l].items():
            im[src_index[parent]][dst_index[child]] = 1
        for j in range(len(dst_index)):
            if sum(im[i][j] for i in range(len(src_index))) != 1:
                raise ValidationError(
                    "iota matrix column %d does not have exactly one 1" % (j,)
                )
        a_list.append(a)
        i_list.append(im)
    return MatrixSystem(tuple(tuple(map(tuple, m)) for m in a_list),
                        tuple(tuple(map(tuple, m)) for m in i_list))


def _n_matrix(ms, l):
    """tI_l - tA_l, mapping Z^{m(l)} -> Z^{m(l+1)}."""
    ti = intalg.transpose([list(r) for r in ms.i[l]])
    ta = intalg.transpose([list(r) for r in ms.a[l]])
    return [[x - y for x, y in zip(ri, ra)] for ri, ra in zip(ti, ta)]


@dataclass(frozen=True)
class GroupTower:
    kind: str  # "K0" or "K1"
    groups: tuple  # FgAbelianGroup per level
    maps: tuple  # connecting matrices in canonical generators
    maps_surjective: tuple
    maps_isomorphism: tuple
    stabilization: dict

    def to_dict(self):
        return {
            "kind": self.kind,
            "groups": [g.to_json() for g in self.groups],
            "stabilization": self.stabilization,
        }


def _classify(groups, iso_flags, window):
    if len(groups) < window:
        return {"kind": "Undetermined", "window": window}
    tail_isos = iso_flags[-(window - 1):] if window > 1 else []
    if all(tail_isos):
        s = len(groups) - window
        while s > 0 and iso_flags[s - 1]:
            s -= 1
        g = groups[-1]
        return {
            "kind": "Stabilized",
            "from_level": s,
            "limit": {"rank": g.rank, "torsion": list(g.torsion)},
        }
    tail = groups[-window:]
    torsions = {g.torsion for g in tail}
    ranks = [g.rank for g in tail]
    if len(torsions) == 1 and all(x < y for x, y in zip(ranks, ranks[1:])):
        return {
            "kind": "TorsionStabilized",
            "torsion": list(tail[0].torsion),
            "ranks": [g.rank for g in groups],
        }
    return {"kind": "Undetermined", "window": window}


def k0_tower(ms, window=DEFAULT_WINDOW):
    """Cokernel tower of tI - tA with connecting maps induced by tI."""
    groups, maps, surj, iso = [], [], [], []
    mats = [_n_matrix(ms, l) for l in range(ms.pairs)]
    for m in mats:
        groups.append(intalg.cokernel(m))
    for l in range(ms.pairs - 1):
        ti_next = intalg.transpose([list(r) for r in ms.i[l + 1]])
        f = intalg.induced_map_on_cokernels(mats[l], mats[l + 1], ti_next)
        maps.append(tuple(map(tuple, f.matrix)))
        surj.append(f.surjective)
        iso.append(f.is_isomorphism)
    return GroupTower(
        "K0",
        tuple(groups),
        tuple(maps),
        tuple(surj),
        tuple(iso),
        _classify(groups, iso, window),
    )


def k1_tower(ms, window=DEFAULT_WINDOW):
    """Kernel tower of tI - tA with connecting maps given by tI."""
    from .errors import NotWellDefined

    mats = [_n_matrix(ms, l) for l in range(ms.pairs)]
    bases = [intalg.kernel_basis(m) for m in mats]
    groups = [FgAbelianGroup(len(b)) for b in bases]
    maps, surj, iso = [], [], []
    for l in range(ms.pairs - 1):
        ti = intalg.transpose([list(r) for r in ms.i[l]])
        src_basis, dst_basis = bases[l], bases[l + 1]
        cols = []
        for b in src_basis:
            image = intalg.matvec(ti, b)
            if any(x != 0 for x in intalg.matvec(mats[l + 1], image)):
                raise NotWellDefined(
                    "tI does not map the level-%d kernel into the "
                    "level-%d kernel" % (l, l + 1),
                    witness=b,
                )
            if dst_basis:
                bm = intalg.transpose(dst_basis)
                coords = intalg.solve(bm, image)
                if coords is None:
                    raise NotWellDefined(
                        "kernel image is not an integral combination of "
                        "the target kernel basis",
                        witness=b,
                    )
                cols.append(coords)
            elif any(x != 0 for x in image):
                raise NotWellDefined(
                    "kernel image lands outside the trivial target kernel",
                    witness=b,
                )
            else:
                cols.append([])
        matrix = (
            intalg.transpose(cols)
            if cols and dst_basis
            else [[] for _ in range(len(dst_basis))]
        )
        maps.append(tuple(map(tuple, matrix)))
        g = intalg.cokernel(matrix) if dst_basis else FgAbelianGroup(0)
        s = g.is_trivial
        surj.append(s)
        iso.append(s and len(src_basis) == len(dst_basis))
    return GroupTower(
        "K1",
        tuple(groups),
        tuple(maps),
        tuple(surj),
        tuple(iso),
        _classify(groups, iso, window),
    )


# ---------------------------------------------------------------------------
# Bowen-Franks groups


@dataclass(frozen=True)
class BFDescriptor:
    """A Bowen-Franks group, possibly with a symbolic free part."""

    group: FgAbelianGroup = None
    torsion: tuple = ()
    symbolic: str = None

    def describe(self):
        if self.group is not None:
            return self.group.describe()
        torsion = FgAbelianGroup(0, self.torsion).describe()
        if torsion == "0":
            return self.symbolic
        return "%s (+) %s" % (torsion, self.symbolic)

    def to_json(self):
        if self.group is not None:
            return {"rank": self.group.rank, "torsion": list(self.group.torsion)}
        return {"torsion": list(self.torsion), "symbolic": self.symbolic}


UNBOUNDED_FREE = "free of unbounded rank"


def _limit_info(tower_or_group):
    if isinstance(tower_or_group, FgAbelianGroup):
        g = tower_or_group
        return {"kind": "Stabilized", "rank": g.rank, "torsion": g.torsion}
    st = tower_or_group.stabilization
    if st["kind"] == "Stabilized":
        return {
            "kind": "Stabilized",
            "rank": st["limit"]["rank"],
            "torsion": tuple(st["limit"]["torsion"]),
        }
    if st["kind"] == "TorsionStabilized":
        return {"kind": "TorsionStabilized", "torsion": tuple(st["torsion"])}
    raise UndeterminedTower(
        "cannot form Bowen-Franks groups from an undetermined tower"
    )


def bowen_franks(k0, k1):
    """BF0 = torsion(K0) + Z^rank(K1); BF1 = Z^rank(K0).

    Follows the split universal-coefficient sequence; unbounded free
    ranks are reported symbolically.
    """
    i0, i1 = _limit_info(k0), _limit_info(k1)
    if i1["kind"] == "Stabilized":
        bf0 = BFDescriptor(group=FgAbelianGroup(i1["rank"], i0["torsion"]))
    else:
        bf0 = BFDescriptor(torsion=i0["torsion"], symbolic=UNBOUNDED_FREE)
    if i0["kind"] == "Stabilized":
        bf1 = BFDescriptor(group=FgAbelianGroup(i0["rank"]))
    else:
        bf1 = BFDescriptor(symbolic=UNBOUNDED_FREE)
    return bf0, bf1


def stationary_bf(a):
    """(Z^n/(I-A)Z^n, kernel basis of I-A) for a square matrix A."""
    n = len(a)
    m = [
        [(1 if i == j else 0) - a[i][j] for j in range(n)]
        for i in range(n)
    ]
    return intalg.cokernel(m), tuple(tuple(v) for v in intalg.kernel_basis(m))
