"""Shared small instances."""

from maxmin import Box, Matrix, Vector

TOP = 10
EXAMPLE_A = Matrix.from_rows(
    [[4, 4, 4, 5], [2, 2, 7, 2], [3, 8, 3, 3], [7, 3, 3, 3]], TOP
)
EXAMPLE_X = Box(Vector((2, 3, 2, 4), TOP), Vector((7, 9, 6, 5), TOP))
RAISED_X = Box(Vector((2, 3, 2, 4), TOP), Vector((7, 9, 6, 6), TOP))
A2 = Matrix.from_rows([[5, 0], [5, 0]], TOP)
A2_X = Box(Vector((0, 0), TOP), Vector((5, 5), TOP))
ALL_TOP2 = Matrix.constant(2, TOP, TOP)
ALL_ZERO2 = Matrix.constant(2, 0, TOP)
E2 = Matrix.identity(2, TOP)


def v(*xs, top=TOP):
    return Vector(tuple(xs), top)
