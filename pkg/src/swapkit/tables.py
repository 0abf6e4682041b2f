"""Text and JSON export of swap-structure truth tables.

Three renderings, matching how the tables are usually displayed:

* structures over the two-element algebra in triple mode print D/ND blocks
  (every cell is exactly the designated or the undesignated set);
* fully deterministic structures print bare value labels;
* anything else prints cells as brace-wrapped sets.
"""

from __future__ import annotations

from .formula import AND, CIRC, IMP, NEG, OR
from .swap import SwapStructure

OP_ORDER = (AND, OR, IMP, NEG, CIRC)


def _designated(structure: SwapStructure) -> tuple[int, ...]:
    top = structure.algebra.top
    return tuple(i for i, z in enumerate(structure.snapshots) if z[0] == top)


def _cell_text(structure: SwapStructure, cell: tuple[int, ...],
               block: bool, bare: bool) -> str:
    labels = structure.malg.labels
    if block:
        designated = set(_designated(structure))
        members = set(cell)
        if members == designated:
            return "D"
        if members == set(range(structure.malg.size)) - designated:
            return "ND"
    if bare and len(cell) == 1:
        return labels[cell[0]]
    # sets print in reverse carrier order: {t,T}, {f0,F}
    return "{" + ",".join(labels[u] for u in sorted(cell, reverse=True)) + "}"


def render_tables(structure: SwapStructure) -> str:
    labels = structure.malg.labels
    k = structure.malg.size
    block = not structure.pair_mode and structure.algebra.atoms == 1
    bare = all(len(cell) == 1
               for table in structure.malg.tables.values()
               for cell in table.values())

    lines = [
        f"logic: {structure.logic.display}",
        f"atoms: {structure.algebra.atoms}",
        "carrier: " + " ".join(labels),
        "designated: " + " ".join(labels[i] for i in _designated(structure)),
    ]

    def cell_text(cell: tuple[int, ...]) -> str:
        return _cell_text(structure, cell, block, bare)

    for op in OP_ORDER:
        table = structure.malg.tables[op]
        lines.append("")
        if op in (NEG, CIRC):
            body = [[labels[i], cell_text(table[(i,)])] for i in range(k)]
            widths = [max(len(r[c]) for r in body + [[op, op]]) for c in (0, 1)]
            head = f"{op.ljust(widths[0])} |"
            lines.append(head)
            lines.append("-" * (widths[0] + 1) + "+" + "-" * (widths[1] + 1))
            for row in body:
                lines.append(f"{row[0].ljust(widths[0])} | {row[1]}")
        else:
            body = [[labels[i]] + [cell_text(table[(i, j)]) for j in range(k)]
                    for i in range(k)]
            headers = [op] + list(labels)
            widths = [max(len(headers[c]), max(len(r[c]) for r in body))
                      for c in range(k + 1)]
            lines.append(" | ".join([headers[0].ljust(widths[0]),
                                     " ".join(h.ljust(w) for h, w in
                                              zip(headers[1:], widths[1:])).rstrip()]))
            lines.append("-" * (widths[0] + 1) + "+" +
                         "-" * (sum(widths[1:]) + len(widths[1:])))
            for row in body:
                lines.append(" | ".join([row[0].ljust(widths[0]),
                                         " ".join(v.ljust(w) for v, w in
                                                  zip(row[1:], widths[1:])).rstrip()]))
    return "\n".join(lines) + "\n"


def tables_json(structure: SwapStructure) -> dict:
    labels = structure.malg.labels
    ops = {}
    for op in OP_ORDER:
        table = structure.malg.tables[op]
        ops[op] = {",".join(labels[a] for a in args): [labels[u] for u in cell]
                   for args, cell in sorted(table.items())}
    return {
        "logic": structure.logic.display,
        "atoms": structure.algebra.atoms,
        "carrier": list(labels),
        "designated": [labels[i] for i in _designated(structure)],
        "ops": ops,
    }
