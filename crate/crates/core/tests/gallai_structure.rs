mod common;

use std::collections::BTreeSet;

use common::*;
use gallai_books::coloring::{find_rainbow_triangle, Color, EdgeColoring};
use gallai_books::gallai::{coarsen, find_partition, part_profile, reduced_graph, verify_partition, GallaiError};
use proptest::prelude::*;

/// Direct check of the partition conditions, independent of `verify_partition`.
fn naive_is_gallai_partition(g: &EdgeColoring, parts: &[Vec<usize>]) -> bool {
    if parts.len() < 2 {
        return false;
    }
    let mut between = BTreeSet::new();
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            let colors: BTreeSet<Color> = a.iter().flat_map(|&u| b.iter().map(move |&v| g.color(u, v))).collect();
            if colors.len() != 1 {
                return false;
            }
            between.extend(colors);
        }
    }
    let covered: BTreeSet<usize> = parts.iter().flatten().copied().collect();
    covered.len() == g.n() && parts.iter().map(Vec::len).sum::<usize>() == g.n() && between.len() <= 2
}

fn check_partition_of(g: &EdgeColoring) {
    let p = find_partition(g).unwrap();
    assert!(verify_partition(g, &p).unwrap().is_valid());
    assert!(naive_is_gallai_partition(g, p.parts()));
    let coarse = coarsen(g, &p).unwrap();
    assert!(verify_partition(g, &coarse).unwrap().is_valid());
    assert!(coarse.t() <= p.t() && coarse.t() >= 2);
    let reduced = reduced_graph(&p).unwrap();
    assert_eq!(reduced.coloring.n(), p.t());
    assert!(reduced.coloring.used_colors().len() <= 2);
    for i in 0..p.t() {
        for j in i + 1..p.t() {
            let original = reduced.original_color(reduced.coloring.color(i, j));
            assert_eq!(original, g.color(p.parts()[i][0], p.parts()[j][0]));
        }
    }
    let membership = p.membership(g.n());
    for (v, &part) in membership.iter().enumerate() {
        assert!(p.parts()[part].contains(&v));
    }
    assert_eq!(part_profile(&p, 2).profile.total(), g.n());
}

#[test]
fn every_three_coloring_of_k4() {
    for code in 0..3u32.pow(6) {
        let colors = (0..6).map(|i| (code / 3u32.pow(i) % 3) as Color + 1).collect();
        let g = EdgeColoring::from_upper_triangle(4, 3, colors).unwrap();
        match find_partition(&g) {
            Ok(p) => assert!(naive_is_gallai_partition(&g, p.parts())),
            Err(GallaiError::RainbowTrianglePresent) => assert!(naive_rainbow(&g).is_some()),
            Err(e) => panic!("unexpected {e}"),
        }
        if naive_rainbow(&g).is_none() {
            check_partition_of(&g);
        }
    }
}

#[test]
fn every_two_coloring_of_k6_partitions() {
    for mask in 0u32..1 << 15 {
        let colors = (0..15).map(|i| (mask >> i & 1) as Color + 1).collect();
        let g = EdgeColoring::from_upper_triangle(6, 2, colors).unwrap();
        let p = find_partition(&g).unwrap();
        assert!(naive_is_gallai_partition(&g, p.parts()), "mask {mask:#x}");
    }
}

#[test]
fn rainbow_triangle_has_no_partition() {
    let g = EdgeColoring::make(3, 3, [((0, 1), 1), ((0, 2), 2), ((1, 2), 3)]).unwrap();
    assert_eq!(find_partition(&g), Err(GallaiError::RainbowTrianglePresent));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn substitution_colorings_partition(g in arb_gallai(24, 5)) {
        prop_assert!(find_rainbow_triangle(&g).is_none());
        check_partition_of(&g);
    }

    #[test]
    fn failure_implies_rainbow(g in arb_coloring(9, 4)) {
        match find_partition(&g) {
            Ok(p) => prop_assert!(naive_is_gallai_partition(&g, p.parts())),
            Err(_) => prop_assert!(naive_rainbow(&g).is_some()),
        }
    }
}
