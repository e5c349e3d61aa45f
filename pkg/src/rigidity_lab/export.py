"""Graphviz DOT rendering of an orientation graph."""

from .certificate import EdgeClass


def to_dot(g, name="orientation"):
    """Oriented edges become arcs, unoriented ones ``dir=none``.

    Dead vertices are filled, live ones hollow.
    """
    p = g.polytope
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v in range(p.n):
        style = 'style=filled, fillcolor=black, fontcolor=white' if not g.live[v] \
            else 'style=solid'
        lines.append(f'  {v} [{style}];')
    for (i, j), c in zip(p.edges, g.classes):
        i, j = int(i), int(j)
        if c == EdgeClass.FORWARD:
            lines.append(f"  {i} -> {j};")
        elif c == EdgeClass.BACKWARD:
            lines.append(f"  {j} -> {i};")
        else:
            lines.append(f"  {i} -> {j} [dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
