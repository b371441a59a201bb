mod common;

use std::collections::BTreeMap;

use common::{monic_operator, ram};
use diffmod::newton::{edge_polynomial_slope0, newton_polygon};
use diffmod::rat::{int, rat};
use diffmod::{DiffOperator, Rat, Valuation};
use proptest::prelude::*;

fn widths(p: &DiffOperator) -> BTreeMap<Rat, usize> {
    let mut out = BTreeMap::new();
    for (s, w) in newton_polygon(p).unwrap().slopes() {
        *out.entry(s).or_insert(0) += w;
    }
    out
}

/// Lower convex hull height at `i`: the least interpolation between two
/// points on either side of `i`.
fn brute_hull_height(points: &[(usize, Rat)], i: usize) -> Rat {
    let mut best: Option<Rat> = None;
    for a in points.iter().filter(|a| a.0 <= i) {
        for b in points.iter().filter(|b| b.0 >= i) {
            let h = if a.0 == b.0 {
                a.1.clone()
            } else {
                let t = rat((i - a.0) as i64, (b.0 - a.0) as i64);
                &a.1 + &(&(&b.1 - &a.1) * &t)
            };
            best = Some(best.map_or(h.clone(), |x: Rat| x.min(h)));
        }
    }
    best.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polygon_additivity(
        m in ram(),
        (da, db) in (1usize..=3, 1usize..=3),
        seed in any::<u64>(),
    ) {
        let mut g = diffmod::gen::Gen::new(seed);
        let p = g.monic_operator(da, m, -4, 3);
        let q = g.monic_operator(db, m, -4, 3);
        let mut expected = widths(&p);
        for (s, w) in widths(&q) {
            *expected.entry(s).or_insert(0) += w;
        }
        prop_assert_eq!(widths(&p.op_mul(&q).unwrap()), expected);
    }

    #[test]
    fn polygon_is_the_lower_hull(p in (1usize..=4).prop_flat_map(|n| monic_operator(n, 2, -6, 4))) {
        let np = newton_polygon(&p).unwrap();
        let mut points: Vec<(usize, Rat)> = p
            .coeffs()
            .iter()
            .enumerate()
            .filter_map(|(i, c)| match c.valuation() {
                Valuation::Finite(v) => Some((i, v)),
                _ => None,
            })
            .collect();
        points.push((0, np.v_min.clone()));
        prop_assert_eq!(np.v_min.clone(), points.iter().map(|x| x.1.clone()).min().unwrap().min(int(0)));
        for i in 0..=p.degree() {
            prop_assert_eq!(np.height_at(i).unwrap(), brute_hull_height(&points, i));
        }
        let total: usize = np.edges.iter().map(|e| e.width).sum();
        prop_assert_eq!(total, p.degree());
        prop_assert!(np.edges.windows(2).all(|w| w[0].slope < w[1].slope));
        prop_assert!(np.edges.iter().all(|e| e.slope >= int(0)));
    }

    #[test]
    fn edge_polynomial_degree_is_the_width(p in (1usize..=4).prop_flat_map(|n| monic_operator(n, 1, -3, 3))) {
        let np = newton_polygon(&p).unwrap();
        let edge = edge_polynomial_slope0(&p).unwrap();
        match np.edge(&int(0)) {
            Some(e) => {
                let e_poly = edge.unwrap().poly;
                prop_assert_eq!(e_poly.degree(), Some(e.start + e.width));
            }
            None => prop_assert!(edge.is_none()),
        }
    }
}

#[test]
fn polygon_examples() {
    let p = diffmod::cli::parse_operator("D^2 - 1/S", 10).unwrap();
    assert_eq!(newton_polygon(&p).unwrap().slopes(), vec![(diffmod::rat::rat(1, 2), 2)]);
    let p = diffmod::cli::parse_operator("D^3 - S^(-2)*D", 10).unwrap();
    assert_eq!(newton_polygon(&p).unwrap().slopes(), vec![(int(0), 1), (int(1), 2)]);
}
