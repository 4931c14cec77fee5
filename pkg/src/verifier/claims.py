"""
Checks on the reduced matrix M* and the height-sum identity behind the
valuation count -(sum h(v_i) + d) = -D.
"""

from fractions import Fraction
from typing import Dict, List, NamedTuple
import logging

from trees.models import UltrametricTree
from trees.ultrametric import as_ultrametric, internal_node_order
from puiseux.matrix import PuiseuxMatrix
from .construction import LeafAssignment

logger = logging.getLogger(__name__)


class ClaimsReport:
    """Per-claim outcome for the reduced matrix, with failure details.

    c1: M*[1, a_i] = 0
    c2: val(M*[3, a_i]) = -d - h(v_i)
    c3: val(M*[j, a_i]) = -h(v_i) for j not in {1, 3}
    c4: the only nonzero entry of row 1 is the constant 1 in column b_{n-1}
    """

    CLAIMS = ('c1', 'c2', 'c3', 'c4')

    def __init__(self):
        self.failures: Dict[str, List[str]] = {claim: [] for claim in self.CLAIMS}

    def fail(self, claim: str, detail: str):
        self.failures[claim].append(detail)

    def __getitem__(self, claim: str) -> bool:
        return not self.failures[claim]

    @property
    def all_ok(self) -> bool:
        return all(self[claim] for claim in self.CLAIMS)

    def to_dict(self) -> Dict[str, bool]:
        return {claim: self[claim] for claim in self.CLAIMS}

    def __repr__(self):
        return f"ClaimsReport({self.to_dict()})"


def check_reduced_claims(m_star: PuiseuxMatrix, assignment: LeafAssignment,
                         d: Fraction) -> ClaimsReport:
    """Verify the four claims on M* for every i = 1..n-1.

    Args:
        m_star: The column reduction of M by reduction_from_alpha(assignment)
        assignment: The leaf assignment used for the reduction
        d: Depth of the tree

    Returns:
        ClaimsReport (failures are reported, never raised)
    """
    report = ClaimsReport()
    n = m_star.n_cols

    for i, (leaf, height) in enumerate(zip(assignment.alpha, assignment.heights), start=1):
        column = leaf - 1
        if m_star[0, column]:
            report.fail('c1', f"M*[1,{leaf}] = {m_star[0, column]} for i={i}")

        value = m_star[2, column].valuation()
        if value != -d - height:
            report.fail('c2', f"val(M*[3,{leaf}]) = {value}, expected {-d - height} for i={i}")

        for row in range(1, m_star.n_rows):
            if row == 2:
                continue
            value = m_star[row, column].valuation()
            if value != -height:
                report.fail('c3', f"val(M*[{row + 1},{leaf}]) = {value}, expected {-height} for i={i}")

    last_b = assignment.b[-1]
    for column in range(n):
        entry = m_star[0, column]
        if column == last_b - 1:
            if not (entry.is_constant() and entry == 1):
                report.fail('c4', f"M*[1,{last_b}] = {entry}, expected 1")
        elif entry:
            report.fail('c4', f"M*[1,{column + 1}] = {entry} is nonzero")

    if not report.all_ok:
        logger.debug(f"Reduced-matrix claims failed: {report.failures}")
    return report


class HeightSumCheck(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    ok: bool


def height_sum_identity(tree: UltrametricTree) -> HeightSumCheck:
    """sum of h(v_i) over the internal nodes against D - d (valid for any n >= 2)."""
    tree = as_ultrametric(tree)
    lhs = sum((tree.height(v) for v in internal_node_order(tree)), Fraction(0))
    rhs = tree.total_weight() - tree.depth
    return HeightSumCheck(lhs, rhs, lhs == rhs)
