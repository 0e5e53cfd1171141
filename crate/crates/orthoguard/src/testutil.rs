//! Shared hand-written fixtures for unit tests.

/// Unit cube, 8 vertices, 6 faces.
pub(crate) const CUBE: &str = "\
ORP 1
# unit cube
vertices 8
0 0 0
1 0 0
1 1 0
0 1 0
0 0 1
1 0 1
1 1 1
0 1 1
faces 6
face 1
loop 4 0 3 2 1
face 1
loop 4 4 5 6 7
face 1
loop 4 0 1 5 4
face 1
loop 4 1 2 6 5
face 1
loop 4 2 3 7 6
face 1
loop 4 3 0 4 7
";

/// L-shaped hexagon in the (x, z) plane extruded along y (depth 1):
/// cross-section [0,2]x[0,2] minus [1,2]x[1,2]. One reflex edge along y.
pub(crate) const L_PRISM: &str = "\
ORP 1
vertices 12
0 0 0
2 0 0
2 0 1
1 0 1
1 0 2
0 0 2
0 1 0
2 1 0
2 1 1
1 1 1
1 1 2
0 1 2
faces 8
face 1
loop 6 0 1 2 3 4 5
face 1
loop 6 6 11 10 9 8 7
face 1
loop 4 0 6 7 1
face 1
loop 4 1 7 8 2
face 1
loop 4 2 8 9 3
face 1
loop 4 3 9 10 4
face 1
loop 4 4 10 11 5
face 1
loop 4 5 11 6 0
";

/// Cube [0,2]^3 minus the corner cube [1,2]^3: reflex edges along all three
/// axes, so orientation normalization must fail.
pub(crate) const THREE_REFLEX_CORNER: &str = "\
ORP 1
vertices 14
0 0 0
2 0 0
2 2 0
0 2 0
0 0 2
2 0 2
0 2 2
2 2 1
2 1 1
2 1 2
1 2 1
1 2 2
1 1 2
1 1 1
faces 9
face 1
loop 4 0 3 2 1
face 1
loop 4 0 1 5 4
face 1
loop 4 0 4 6 3
face 1
loop 6 1 2 7 8 9 5
face 1
loop 6 3 6 11 10 7 2
face 1
loop 6 4 5 9 12 11 6
face 1
loop 4 13 10 11 12
face 1
loop 4 13 12 9 8
face 1
loop 4 13 8 7 10
";
