use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};

use sha2::{Digest, Sha256};
use tricorn_core::scan::*;
use tricorn_core::verify::{ClaimStatus, Verdict};
use tricorn_core::ComplexBox;

fn root() -> ComplexBox {
    ComplexBox::from_bounds(-1.73875, -1.73825, 0.01555, 0.01605).unwrap()
}

/// Deterministic pseudo-random verdict for a box; `salt` picks the pattern.
fn noise(b: &ComplexBox, salt: u64) -> u64 {
    let mut h = DefaultHasher::new();
    salt.hash(&mut h);
    for x in [b.re.lo(), b.re.hi(), b.im.lo(), b.im.hi()] {
        x.to_bits().hash(&mut h);
    }
    h.finish()
}

fn random_status(b: &ComplexBox, salt: u64) -> ClaimStatus {
    let e = (noise(b, salt) % 7) as u32;
    match noise(b, salt) % 10 {
        0..=3 => ClaimStatus::verified(e),
        4 => ClaimStatus::refuted(e),
        _ => ClaimStatus::undetermined(e),
    }
}

fn cfg(max_depth: u32, workers: usize) -> ScanConfig {
    ScanConfig {
        max_depth,
        workers,
        ..Default::default()
    }
}

#[test]
fn identical_output_for_any_worker_count() {
    let digest = |workers| {
        let t = adaptive_scan(
            root(),
            "qlike",
            |b: &ComplexBox| random_status(b, 1),
            &cfg(7, workers),
        );
        let cert =
            ParamCertificate::from_tree(&t, vec![("iterate".into(), "3".into())], vec![], false);
        Sha256::digest(serialize(&cert).as_bytes())
    };
    let one = digest(1);
    assert_eq!(one, digest(4));
    assert_eq!(one, digest(0));
}

#[test]
fn certificates_round_trip_bit_exactly() {
    for salt in 0..10 {
        let t = adaptive_scan(
            root(),
            "parabolic",
            |b: &ComplexBox| random_status(b, salt),
            &cfg(6, 1),
        );
        let mut cert = ParamCertificate::from_tree(
            &t,
            vec![("period".into(), "9".into())],
            vec!["some assumption".into()],
            salt % 2 == 0,
        );
        let text = serialize(&cert);
        let back = parse(&text).unwrap();
        assert_eq!(serialize(&back), text);
        // effort is not part of the file
        for l in &mut cert.leaves {
            l.status.effort = 0;
        }
        assert_eq!(back, cert);
        let tree = tree_from_certificate(&back);
        assert_eq!(tree.leaves, cert.leaves);
        tree.check_tiling().unwrap();
    }
}

#[test]
fn malformed_certificates_are_rejected() {
    let t = adaptive_scan(
        root(),
        "count",
        |b: &ComplexBox| random_status(b, 3),
        &cfg(3, 1),
    );
    let text = serialize(&ParamCertificate::from_tree(&t, vec![], vec![], false));
    let last = text.lines().last().unwrap();
    for bad in [
        text.replace(
            last,
            &last
                .replace(" T ", " X ")
                .replace(" U ", " X ")
                .replace(" F ", " X "),
        ),
        text.lines()
            .filter(|l| *l != last)
            .collect::<Vec<_>>()
            .join("\n"),
        text.replacen("#format=", "#formt=", 1),
    ] {
        assert!(
            parse(&bad).is_err()
                || tree_from_certificate(&parse(&bad).unwrap())
                    .check_tiling()
                    .is_err()
        );
    }
}

#[test]
fn leaves_tile_the_root() {
    for salt in 0..20 {
        let t = adaptive_scan(
            root(),
            "qlike",
            |b: &ComplexBox| random_status(b, salt),
            &cfg(8, 0),
        );
        t.check_tiling().unwrap();
        assert!(area_defect(&t).contains(0.0));
        for l in &t.leaves {
            assert!(l.status.verdict != Verdict::Undetermined || l.depth == 8);
        }
    }
}

#[test]
fn min_depth_and_min_width() {
    let t = adaptive_scan(
        root(),
        "qlike",
        |_: &ComplexBox| ClaimStatus::verified(1),
        &ScanConfig {
            min_depth: 3,
            ..cfg(8, 1)
        },
    );
    assert_eq!(t.leaves.len(), 64);
    let w = root().width();
    let t = adaptive_scan(
        root(),
        "qlike",
        |_: &ComplexBox| ClaimStatus::undetermined(1),
        &ScanConfig {
            min_width: w / 8.0,
            ..cfg(20, 1)
        },
    );
    assert_eq!(t.max_leaf_depth(), 3);
}

/// A predicate that stays verified on sub-boxes of a verified box.
fn disk(b: &ComplexBox) -> ClaimStatus {
    let (cx, cy) = root().midpoint();
    let r = 0.0002;
    let far = [
        (b.re.lo(), b.im.lo()),
        (b.re.hi(), b.im.lo()),
        (b.re.lo(), b.im.hi()),
        (b.re.hi(), b.im.hi()),
    ]
    .iter()
    .map(|(x, y)| ((x - cx).powi(2) + (y - cy).powi(2)).sqrt())
    .fold(0.0, f64::max);
    if far < r {
        ClaimStatus::verified(1)
    } else {
        ClaimStatus::undetermined(1)
    }
}

fn verified_area(t: &ScanTree) -> f64 {
    t.leaves
        .iter()
        .filter(|l| l.status.verdict == Verdict::True)
        .map(|l| l.bbox.re.width() * l.bbox.im.width())
        .sum()
}

#[test]
fn refinement_only_grows_the_verified_set() {
    let mut last = 0.0;
    for d in 0..=9 {
        let t = adaptive_scan(root(), "qlike", disk, &cfg(d, 0));
        let a = verified_area(&t);
        assert!(a >= last);
        last = a;
        // every verified leaf of a shallower scan is verified here too
        if d > 0 {
            let prev = adaptive_scan(root(), "qlike", disk, &cfg(d - 1, 0));
            for l in prev
                .leaves
                .iter()
                .filter(|l| l.status.verdict == Verdict::True)
            {
                let (x, y) = l.bbox.midpoint();
                let here = t.leaves_containing(x, y);
                assert!(here
                    .iter()
                    .all(|&i| t.leaves[i].status.verdict == Verdict::True));
            }
        }
    }
    assert!(last > 0.0);
}

/// Labels of the verified cells of the finest grid by 4-connected flood fill.
fn flood_fill(grid: &[Vec<bool>]) -> Vec<Vec<Option<usize>>> {
    let n = grid.len();
    let mut label = vec![vec![None; n]; n];
    let mut next = 0;
    for sy in 0..n {
        for sx in 0..n {
            if !grid[sy][sx] || label[sy][sx].is_some() {
                continue;
            }
            let mut stack = vec![(sx, sy)];
            label[sy][sx] = Some(next);
            while let Some((x, y)) = stack.pop() {
                let nbrs = [
                    (x.wrapping_sub(1), y),
                    (x + 1, y),
                    (x, y.wrapping_sub(1)),
                    (x, y + 1),
                ];
                for (u, v) in nbrs {
                    if u < n && v < n && grid[v][u] && label[v][u].is_none() {
                        label[v][u] = Some(next);
                        stack.push((u, v));
                    }
                }
            }
            next += 1;
        }
    }
    label
}

#[test]
fn components_agree_with_flood_fill() {
    for salt in 0..30 {
        let d = 6;
        let t = adaptive_scan(
            root(),
            "qlike",
            |b: &ComplexBox| random_status(b, 100 + salt),
            &cfg(d, 1),
        );
        let n = 1usize << t.max_leaf_depth();
        let mut grid = vec![vec![false; n]; n];
        let mut owner = vec![vec![usize::MAX; n]; n];
        let (x0, y0) = (t.root.re.lo(), t.root.im.lo());
        let (cw, ch) = (t.root.re.width() / n as f64, t.root.im.width() / n as f64);
        for (i, l) in t.leaves.iter().enumerate() {
            let (mx, my) = l.bbox.midpoint();
            let half = (n >> l.depth) as f64 / 2.0;
            let (cx, cy) = ((mx - x0) / cw, (my - y0) / ch);
            let (gx0, gy0) = ((cx - half).round() as usize, (cy - half).round() as usize);
            for gy in gy0..gy0 + (n >> l.depth) {
                for gx in gx0..gx0 + (n >> l.depth) {
                    grid[gy][gx] = l.status.verdict == Verdict::True;
                    owner[gy][gx] = i;
                }
            }
        }
        assert!(owner.iter().flatten().all(|&o| o != usize::MAX));
        let labels = flood_fill(&grid);
        let comps = component_rollup(&t, None);
        let mut comp_of_leaf = HashMap::new();
        for (k, c) in comps.iter().enumerate() {
            for &l in &c.leaves {
                comp_of_leaf.insert(l, k);
            }
        }
        // the two labelings induce the same partition
        let mut a_to_b = HashMap::new();
        let mut b_to_a = HashMap::new();
        for gy in 0..n {
            for gx in 0..n {
                if let Some(f) = labels[gy][gx] {
                    let c = comp_of_leaf[&owner[gy][gx]];
                    assert_eq!(*a_to_b.entry(f).or_insert(c), c);
                    assert_eq!(*b_to_a.entry(c).or_insert(f), f);
                }
            }
        }
        assert_eq!(a_to_b.len(), comps.len());
        for (k, c) in comps.iter().enumerate() {
            let touches = (0..n).any(|i| {
                [
                    labels[0][i],
                    labels[n - 1][i],
                    labels[i][0],
                    labels[i][n - 1],
                ]
                .iter()
                .any(|l| l.is_some_and(|l| a_to_b[&l] == k))
            });
            assert_eq!(c.touches_root_boundary, touches);
        }
    }
}

#[test]
fn diagonal_neighbours_are_not_joined() {
    // verified exactly on the SW and NE quadrants
    let t = adaptive_scan(
        root(),
        "qlike",
        |b: &ComplexBox| {
            let (x, y) = b.midpoint();
            let (cx, cy) = root().midpoint();
            if b == &root() {
                ClaimStatus::undetermined(1)
            } else if (x < cx) == (y < cy) {
                ClaimStatus::verified(1)
            } else {
                ClaimStatus::refuted(1)
            }
        },
        &cfg(1, 1),
    );
    assert_eq!(component_rollup(&t, None).len(), 2);
    let (ax, ay) = (root().re.lo(), root().im.lo());
    let comps = component_rollup(&t, Some((ax, ay)));
    assert_eq!(comps.iter().filter(|c| c.contains_anchor).count(), 1);
}

#[test]
fn node_boxes_follow_quadrant_order() {
    let r = root();
    let q = r.quadrants();
    for (i, b) in q.iter().enumerate() {
        assert_eq!(node_box(&r, 1, i as u64), *b);
    }
    // SW, SE, NW, NE
    assert!(q[0].re.hi() == q[1].re.lo() && q[0].im.hi() == q[2].im.lo());
    assert_eq!(node_box(&r, 2, 0b11_00), q[3].quadrants()[0]);
}

#[test]
fn hex_endpoints_are_bit_patterns() {
    for x in [0.0, -0.0, 1.5, -1.73875, f64::MIN_POSITIVE, 5e-324] {
        let h = hex_f64(x);
        assert_eq!(h.len(), 16);
        assert_eq!(parse_hex_f64(&h).unwrap().to_bits(), x.to_bits());
    }
    assert!(parse_hex_f64("3FF0000000000000").is_none());
    assert!(parse_hex_f64("3ff00000").is_none());
}
