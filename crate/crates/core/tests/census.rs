use std::collections::BTreeMap;

use semimagic::census::hexagon_center;
use semimagic::genfunc::{trivial_orbit_component_gfs, trivial_orbit_gf, trivial_zero_gf, TrivialOrbitSize};
use semimagic::portrait::{hexagon, triangle_from_census, HexKind, TriangleLabel};
use semimagic::symmetry::{orbit, StabilizerClass};
use semimagic::{
    star_union, toplines, trivial_zero_quasipoly, verify_table1, Exec, GroupElement, Perm3,
    SemiMagicSquare, TopLine, ZeroCensus, DEFAULT_J_CAP,
};

fn census(j: u32) -> ZeroCensus {
    ZeroCensus::compute(j, DEFAULT_J_CAP, Exec::Parallel).unwrap()
}

#[test]
fn trivial_counts_agree_with_quasipolynomial_and_gfs() {
    let h3t = trivial_zero_gf::<i64>().series_coeffs(31).unwrap();
    let o3t = trivial_orbit_gf::<i64>().series_coeffs(31).unwrap();
    let components: BTreeMap<TrivialOrbitSize, Vec<i64>> = trivial_orbit_component_gfs::<i64>()
        .into_iter()
        .map(|(k, gf)| (k, gf.series_coeffs(31).unwrap()))
        .collect();
    let qp = trivial_zero_quasipoly::<i64>();
    for j in 0..=30u32 {
        let t = census(j).trivial_census();
        assert_eq!(t.h3t as i64, h3t[j as usize], "H3T at J={j}");
        assert_eq!(t.h3t as i64, qp.eval(j as u64).unwrap(), "quasi-polynomial at J={j}");
        assert_eq!(t.o3t as i64, o3t[j as usize], "O3T at J={j}");
        for (size, coeffs) in &components {
            let seen = t.orbits.iter().filter(|o| o.size == size.size()).count() as i64;
            assert_eq!(seen, coeffs[j as usize], "size-{} trivial orbits at J={j}", size.size());
        }
    }
}

#[test]
fn j15_orbits_and_star() {
    let c = census(15);
    assert_eq!(c.zeros.len(), 154);
    assert_eq!(c.orbits.len(), 8);
    let t = c.trivial_census();
    assert_eq!((t.o3t, t.h3t), (7, 136));
    let mut sizes: Vec<usize> = t.orbits.iter().map(|o| o.size).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 9, 9, 9, 36, 36, 36]);

    let rep = SemiMagicSquare::new([[9, 3, 3], [3, 11, 1], [3, 1, 11]]).unwrap();
    let nontrivial: Vec<_> = c.nontrivial_orbits().collect();
    assert_eq!(nontrivial.len(), 1);
    assert!(nontrivial[0].contains(&rep));
    assert_eq!(nontrivial[0].size, 18);

    let tops = [TopLine::new(1, 5, 9), TopLine::new(3, 5, 7), TopLine::new(5, 5, 5)];
    assert_eq!(star_union(15, &tops).unwrap(), 73);
}

#[test]
fn j15_center_hexagon_holds_three_orbits() {
    // 1 + 6 + 6 trivial zeros of the (5,5,5) hexagon, from three orbits
    let top = TopLine::new(5, 5, 5);
    let c = census(15);
    let mut per_orbit = Vec::new();
    for o in c.trivial_orbits() {
        let n = o.members.iter().filter(|m| m.top_line() == top).count();
        if n > 0 {
            per_orbit.push(n);
        }
    }
    per_orbit.sort();
    assert_eq!(per_orbit, vec![1, 6, 6]);
    assert_eq!(orbit(&hexagon_center(top).unwrap()).size, 1);
}

#[test]
fn j24_orbits() {
    let c = census(24);
    assert_eq!(c.zeros.len(), 252);
    let sizes: Vec<usize> = c.orbits.iter().map(|o| o.size).collect();
    assert_eq!(sizes.len(), 6);
    let mut sorted = sizes.clone();
    sorted.sort();
    assert_eq!(sorted, vec![18, 18, 36, 36, 72, 72]);
    let m888 = SemiMagicSquare::new([[8, 8, 8], [2, 9, 13], [14, 7, 3]]).unwrap();
    let o = c.orbits.iter().find(|o| o.contains(&m888)).unwrap();
    assert_eq!(o.size, 72);
    let on_center: Vec<_> = o.members.iter().filter(|m| m.top_line() == TopLine::new(8, 8, 8)).collect();
    assert_eq!(on_center.len(), 12);
    assert_eq!(c.zeros.iter().filter(|m| m.top_line() == TopLine::new(8, 8, 8)).count(), 12);
    for o in c.orbits.iter().filter(|o| o.size == 36) {
        assert_eq!(o.stabilizer_class, StabilizerClass::Z2TransposeType);
    }
}

#[test]
fn table1_up_to_24() {
    for j in 0..=24 {
        let report = verify_table1(j).unwrap();
        assert!(report.all_match(), "J={j}: {report:?}");
        let expected = if j == 0 { 1 } else { 3 * j as u64 * (j as u64 * j as u64 + 3) / 2 };
        assert_eq!(report.total_size, expected, "J={j}");
    }
}

#[test]
fn orbit_triangles_partition_the_zero_triangle() {
    for j in [8, 15, 24] {
        let c = census(j);
        let zeros = triangle_from_census(&c, TriangleLabel::ZeroCounts).unwrap();
        assert_eq!(zeros.total() as usize, c.zeros.len());
        let mut sum = vec![0u64; zeros.values.len()];
        for id in 0..c.orbits.len() {
            let t = triangle_from_census(&c, TriangleLabel::OrbitCounts(id)).unwrap();
            for (acc, (_, v)) in sum.iter_mut().zip(&t.values) {
                *acc += v;
            }
        }
        let direct: Vec<u64> = zeros.values.iter().map(|(_, v)| *v).collect();
        assert_eq!(sum, direct, "J={j}");
    }
}

#[test]
fn square_count_triangle_follows_the_difference_rules() {
    for j in 1..=20u32 {
        let rows = semimagic::portrait::triangle(j, TriangleLabel::SquareCounts).unwrap().rows();
        assert_eq!(rows[0][0], j as u64 + 1);
        assert_eq!(*rows[0].last().unwrap(), j as u64 + 1);
        assert_eq!(rows[j as usize], vec![j as u64 + 1]);
        for (a, row) in rows.iter().enumerate().filter(|(_, r)| r.len() > 1) {
            let d: Vec<i64> = row.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
            assert_eq!(d[0], j as i64 - 1 - a as i64, "J={j} row {a}");
            assert!(d.windows(2).all(|w| w[1] - w[0] == -2), "J={j} row {a}");
        }
    }
}

#[test]
fn hexagon_point_reflection() {
    let swap = GroupElement::rows(Perm3::parse_body("23").unwrap());
    for j in [8u32, 11, 15] {
        let zeros: Vec<SemiMagicSquare> = census(j).zeros;
        for top in toplines(j) {
            let occ = hexagon(top, HexKind::Occupancy);
            let (rows, cols) = occ.dims();
            for (r, c) in occ.cells.keys() {
                assert!(occ.cells.contains_key(&(rows - 1 - r, cols - 1 - c)));
            }
            for m in zeros.iter().filter(|m| m.top_line() == top) {
                let image = swap.apply(m);
                assert!(zeros.contains(&image));
                assert_eq!((image.r(), image.c()), (rows - 1 - m.r(), cols - 1 - m.c()));
            }
        }
    }
}
