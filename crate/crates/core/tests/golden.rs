use num_bigint::BigInt;
use semimagic::portrait::{hexagon, triangle, HexKind, Render, TriangleLabel};
use semimagic::{cg_hexagon, from_topline_rc, TopLine};

/// Rows of a hexagon, blanks as `None`, `r` downwards and `c` across.
fn grid(top: TopLine) -> Vec<Vec<Option<i64>>> {
    let values = cg_hexagon::<i64>(top).unwrap();
    (0..=top.b + top.k)
        .map(|r| (0..=top.a + top.b).map(|c| values.get(&(r, c)).map(|v| v.0)).collect())
        .collect()
}

fn row(cells: &[Option<i64>]) -> Vec<i64> {
    cells.iter().flatten().copied().collect()
}

#[test]
fn j4_arrays() {
    let diag = grid(TopLine::new(0, 4, 0));
    assert_eq!(diag.len(), 5);
    for (r, cells) in diag.iter().enumerate() {
        for (c, v) in cells.iter().enumerate() {
            assert_eq!(*v, (r == c).then_some(1), "(0,4,0) at ({r},{c})");
        }
    }

    let flat = grid(TopLine::new(3, 0, 1));
    assert_eq!(flat.len(), 2);
    assert_eq!(row(&flat[0]), vec![1, 1, 1, 1]);
    assert_eq!(row(&flat[1]), vec![-4, -3, -2, -1]);

    let hex = grid(TopLine::new(1, 2, 1));
    let expect = [
        vec![Some(3), Some(3), None, None],
        vec![Some(-2), Some(1), Some(4), None],
        vec![None, Some(-2), Some(-1), Some(3)],
        vec![None, None, Some(-2), Some(-3)],
    ];
    assert_eq!(hex, expect);

    let total: usize = [&diag, &flat, &hex].iter().map(|g| g.iter().flatten().flatten().count()).sum();
    assert_eq!(total, 23);
}

#[test]
fn j8_hexagon_cell_for_cell() {
    let expect: [&[i64]; 7] = [
        &[6, 6, 6],
        &[-3, 3, 9, 15],
        &[-3, 0, 9, 24],
        &[-3, -3, 6, 30],
        &[-3, -6, 0, 30],
        &[-3, -9, -9, 21],
        &[-3, -12, -21],
    ];
    let starts = [0usize, 0, 1, 2, 3, 4, 5];
    let g = grid(TopLine::new(2, 5, 1));
    assert_eq!(g.len(), 7);
    for r in 0..7 {
        assert_eq!(g[r].len(), 8);
        for (c, cell) in g[r].iter().enumerate() {
            let want = c
                .checked_sub(starts[r])
                .and_then(|i| expect[r].get(i))
                .copied();
            assert_eq!(*cell, want, "(2,5,1) at ({r},{c})");
        }
    }
    let zeros: Vec<(usize, usize)> = (0..7)
        .flat_map(|r| (0..8).map(move |c| (r, c)))
        .filter(|&(r, c)| g[r][c] == Some(0))
        .collect();
    assert_eq!(zeros, vec![(2, 2), (4, 5)]);
    let m = from_topline_rc(TopLine::new(2, 5, 1), 2, 2).unwrap();
    assert_eq!(m.cells(), &[[2, 5, 1], [2, 1, 5], [4, 2, 2]]);
    let m = from_topline_rc(TopLine::new(2, 5, 1), 4, 5).unwrap();
    assert_eq!(m.cells(), &[[2, 5, 1], [4, 2, 2], [2, 1, 5]]);
}

#[test]
fn hexagon_portrait_agrees_with_grid() {
    let top = TopLine::new(2, 5, 1);
    let p = hexagon(top, HexKind::Cg);
    assert_eq!(p.cells.len(), 26);
    assert_eq!(p.value(2, 2), Some(&BigInt::from(0)));
    assert_eq!(p.value(0, 0), Some(&BigInt::from(6)));
    assert_eq!(p.value(0, 3), None);
}

#[test]
fn triangle_golden_file() {
    let text = triangle(4, TriangleLabel::SquareCounts).unwrap().render_text();
    assert_eq!(text, include_str!("corpus/triangle_j4_squares.txt"));
}
