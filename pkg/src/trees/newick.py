"""
Newick ingestion and canonical serialization.

Grammar:
    tree    := subtree [":" weight] ";"
    subtree := leaf | "(" subtree ":" weight ("," subtree ":" weight)+ ")"
    leaf    := integer label
    weight  := decimal | integer "/" integer
"""

import re
from fractions import Fraction
from typing import List, Optional
import logging

from utils.rationals import format_rational, parse_rational
from .models import (
    LabelError,
    NotBinaryError,
    NotEquidistantError,
    PhyloTree,
    Tree,
    TreeError,
    UltrametricTree,
    ZeroLeafDistanceError,
)

logger = logging.getLogger(__name__)

_LABEL_RE = re.compile(r'\d+')
_WEIGHT_RE = re.compile(r'\d+/\d+|\d+(?:\.\d*)?|\.\d+')
_TOKEN_END = set(',);: \t\r\n')


class NewickSyntaxError(TreeError):
    """Newick text does not follow the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _NewickParser:
    """Stack-based parser producing parent/weight/label arrays."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.parents: List[Optional[int]] = []
        self.weights: List[Optional[Fraction]] = []
        self.labels: List[Optional[int]] = []
        self._label_positions = {}

    def parse(self) -> Tree:
        self._skip_ws()
        self._subtree(None)
        self._skip_ws()
        if self._peek() == ':':
            self.pos += 1
            root_weight = self._weight()
            logger.warning(f"Ignoring weight {root_weight} on the root")
        self._expect(';')
        self._skip_ws()
        if self.pos != len(self.text):
            raise NewickSyntaxError("Unexpected text after ';'", self.pos)
        return Tree(self.parents, self.weights, self.labels)

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _expect(self, char: str):
        self._skip_ws()
        if self._peek() != char:
            found = repr(self._peek()) if self._peek() else 'end of input'
            raise NewickSyntaxError(f"Expected {char!r}, found {found}", self.pos)
        self.pos += 1

    def _new_node(self, parent: Optional[int]) -> int:
        self.parents.append(parent)
        self.weights.append(None)
        self.labels.append(None)
        return len(self.parents) - 1

    def _subtree(self, parent: Optional[int]) -> int:
        """Parse one subtree without recursion; returns its node id.

        open_nodes holds [node, children parsed so far] for every "(" not yet closed.
        """
        self._skip_ws()
        top = node = self._new_node(parent)
        open_nodes: List[List[int]] = []
        while True:
            if self._peek() == '(':
                self.pos += 1
                open_nodes.append([node, 0])
                self._skip_ws()
                node = self._new_node(node)
                continue
            self.labels[node] = self._label()

            # node is complete; close parents until one expects another child
            while open_nodes:
                frame = open_nodes[-1]
                self._child_weight(node)
                frame[1] += 1
                self._skip_ws()
                char = self._peek()
                if char == ',':
                    self.pos += 1
                    self._skip_ws()
                    node = self._new_node(frame[0])
                    break
                if char != ')':
                    found = repr(char) if char else 'end of input'
                    raise NewickSyntaxError(f"Expected ',' or ')', found {found}", self.pos)
                self.pos += 1
                if frame[1] < 2:
                    raise NewickSyntaxError("Internal node needs at least two children", self.pos)
                open_nodes.pop()
                node = frame[0]
            else:
                return top

    def _label(self) -> int:
        start = self.pos
        match = _LABEL_RE.match(self.text, self.pos)
        if not match:
            found = repr(self._peek()) if self._peek() else 'end of input'
            raise NewickSyntaxError(f"Expected integer leaf label, found {found}", start)
        self.pos = match.end()
        if self._peek() and self._peek() not in _TOKEN_END:
            raise NewickSyntaxError("Leaf label must be an integer", start)
        label = int(match.group())
        if label in self._label_positions:
            raise LabelError(
                f"Duplicate leaf label {label} at position {start} "
                f"(first seen at position {self._label_positions[label]})"
            )
        self._label_positions[label] = start
        return label

    def _child_weight(self, child: int):
        self._skip_ws()
        if self._peek() != ':':
            what = f"leaf {self.labels[child]}" if self.labels[child] is not None else "subtree"
            raise NewickSyntaxError(f"Missing weight on {what}", self.pos)
        self.pos += 1
        self.weights[child] = self._weight()

    def _weight(self) -> Fraction:
        self._skip_ws()
        start = self.pos
        match = _WEIGHT_RE.match(self.text, self.pos)
        if not match or (match.end() < len(self.text)
                         and self.text[match.end()] not in _TOKEN_END):
            raise NewickSyntaxError("Non-numeric weight", start)
        self.pos = match.end()
        try:
            return parse_rational(match.group())
        except ValueError as e:
            raise NewickSyntaxError(str(e), start) from None


def parse_tree(text: str) -> Tree:
    """Parse Newick text into an unclassified Tree."""
    return _NewickParser(text).parse()


def classify_tree(tree: Tree) -> Tree:
    """Return the tree as an UltrametricTree or PhyloTree.

    Raises:
        TreeError: If the tree is neither (zero-weight edges outside an
            ultrametric tree)
    """
    if isinstance(tree, (UltrametricTree, PhyloTree)):
        return tree
    try:
        return UltrametricTree.from_tree(tree)
    except (NotBinaryError, NotEquidistantError, ZeroLeafDistanceError) as e:
        logger.debug(f"Not ultrametric: {e}")
        reason = e
    try:
        return PhyloTree.from_tree(tree)
    except TreeError as e:
        raise TreeError(f"{e}; and not an ultrametric tree ({reason})") from None


def parse_newick(text: str) -> Tree:
    """Parse Newick text into a PhyloTree or UltrametricTree.

    Args:
        text: Newick string, weights as decimals or "p/q"

    Returns:
        The classified tree with exact rational weights

    Raises:
        NewickSyntaxError: On grammar violations (position reported)
        LabelError: On duplicate or missing leaf labels
        TreeError: If the tree is neither phylogenetic nor ultrametric
    """
    tree = classify_tree(parse_tree(text))
    logger.debug(f"Parsed {tree!r}")
    return tree


def serialize_newick(tree: Tree) -> str:
    """Canonical Newick: children by smallest leaf label, weights exact."""
    rendered = {}
    for node in tree.postorder():
        if tree.is_leaf(node):
            rendered[node] = str(tree.label(node))
            continue
        parts = [f"{rendered.pop(c)}:{format_rational(tree.weight(c))}" for c in tree.children(node)]
        rendered[node] = '(' + ','.join(parts) + ')'
    return rendered[tree.root] + ';'
