//! Classification of vanishing sums of three or four unimodular numbers.
//!
//! Three unimodular numbers summing to zero are a rotated copy of the cube
//! roots of unity. Four such numbers split into two antipodal pairs.

use serde::{Deserialize, Serialize};

use crate::error::{ChmError, Result};
use crate::matrix::{cis, C64};
use crate::tol::Tolerances;

/// `e^{2 pi i / 3}`.
pub fn omega() -> C64 {
    cis(2.0 * std::f64::consts::PI / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ZeroSumClass {
    /// `(a, b, c) = scale * (1, w, w^2)`.
    TriplePropOmega { scale: C64 },
    /// `(a, b, c) = scale * (1, w^2, w)`.
    TriplePropOmegaSq { scale: C64 },
    /// `values[p.0] = -values[p.1]` for both pairs; `anchors[k]` is
    /// `values[pairs[k].0]`.
    QuadPairing {
        pairs: [(usize, usize); 2],
        anchors: [C64; 2],
    },
}

impl ZeroSumClass {
    pub fn scale(&self) -> C64 {
        match *self {
            Self::TriplePropOmega { scale } | Self::TriplePropOmegaSq { scale } => scale,
            Self::QuadPairing { anchors, .. } => anchors[0],
        }
    }

    /// Rebuilds the classified values.
    pub fn reconstruct(&self) -> Vec<C64> {
        let w = omega();
        match *self {
            Self::TriplePropOmega { scale } => vec![scale, scale * w, scale * w * w],
            Self::TriplePropOmegaSq { scale } => vec![scale, scale * w * w, scale * w],
            Self::QuadPairing { pairs, anchors } => {
                let mut v = vec![C64::new(0.0, 0.0); 4];
                for (&(a, b), &z) in pairs.iter().zip(&anchors) {
                    v[a] = z;
                    v[b] = -z;
                }
                v
            }
        }
    }
}

pub fn zero_sum_class(values: &[C64], tol: &Tolerances) -> Result<ZeroSumClass> {
    if values.len() != 3 && values.len() != 4 {
        return Err(ChmError::UnsupportedArity(values.len()));
    }
    for (i, z) in values.iter().enumerate() {
        let dev = (z.norm() - 1.0).abs();
        if dev > tol.eps_entry {
            return Err(ChmError::NotUnimodular {
                row: 0,
                col: i,
                deviation: dev,
            });
        }
    }
    let sum: C64 = values.iter().sum();
    if sum.norm() > tol.eps_match {
        return Err(ChmError::NotZeroSum(sum.norm()));
    }

    if values.len() == 3 {
        let scale = values[0];
        let w = omega();
        let ratio = values[1] / scale;
        return Ok(if (ratio - w).norm() <= (ratio - w * w).norm() {
            ZeroSumClass::TriplePropOmega { scale }
        } else {
            ZeroSumClass::TriplePropOmegaSq { scale }
        });
    }

    // a must cancel one of b, c, d; the remaining two then cancel each other.
    let partner = (1..4)
        .min_by(|&i, &j| {
            (values[0] + values[i])
                .norm()
                .total_cmp(&(values[0] + values[j]).norm())
        })
        .expect("three candidates");
    let rest: Vec<usize> = (1..4).filter(|&k| k != partner).collect();
    Ok(ZeroSumClass::QuadPairing {
        pairs: [(0, partner), (rest[0], rest[1])],
        anchors: [values[0], values[rest[0]]],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn cube_roots_of_unity() {
        let w = omega();
        let k = zero_sum_class(&[c(1.0, 0.0), w, w * w], &Tolerances::default()).unwrap();
        match k {
            ZeroSumClass::TriplePropOmega { scale } => assert!((scale - 1.0).norm() < 1e-15),
            other => panic!("{other:?}"),
        }
        let k = zero_sum_class(&[c(1.0, 0.0), w * w, w], &Tolerances::default()).unwrap();
        assert!(matches!(k, ZeroSumClass::TriplePropOmegaSq { .. }));
    }

    #[test]
    fn alternating_signs() {
        let k = zero_sum_class(
            &[c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
            &Tolerances::default(),
        )
        .unwrap();
        let ZeroSumClass::QuadPairing { pairs, .. } = k else {
            panic!("{k:?}")
        };
        // {0<->1, 2<->3} or {0<->3, 1<->2}
        assert!(pairs == [(0, 1), (2, 3)] || pairs == [(0, 3), (1, 2)]);
    }

    #[test]
    fn powers_of_i() {
        let k = zero_sum_class(
            &[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)],
            &Tolerances::default(),
        )
        .unwrap();
        let ZeroSumClass::QuadPairing { pairs, .. } = k else {
            panic!("{k:?}")
        };
        assert_eq!(pairs, [(0, 2), (1, 3)]);
    }

    #[test]
    fn errors() {
        let tol = Tolerances::default();
        assert!(matches!(
            zero_sum_class(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)], &tol),
            Err(ChmError::NotZeroSum(_))
        ));
        assert!(matches!(
            zero_sum_class(&[c(2.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)], &tol),
            Err(ChmError::NotUnimodular { col: 0, .. })
        ));
        assert!(matches!(
            zero_sum_class(&[c(1.0, 0.0), c(-1.0, 0.0)], &tol),
            Err(ChmError::UnsupportedArity(2))
        ));
    }

    proptest! {
        #[test]
        fn triple_round_trip(phase in 0.0..std::f64::consts::TAU, flip in any::<bool>()) {
            let s = cis(phase);
            let w = omega();
            let v = if flip { vec![s, s * w * w, s * w] } else { vec![s, s * w, s * w * w] };
            let k = zero_sum_class(&v, &Tolerances::default()).unwrap();
            let back = k.reconstruct();
            for (a, b) in v.iter().zip(&back) {
                prop_assert!((a - b).norm() < 1e-6);
            }
        }

        #[test]
        fn quad_round_trip(p in 0.0..std::f64::consts::TAU, q in 0.0..std::f64::consts::TAU, order in 0usize..3) {
            let (a, b) = (cis(p), cis(q));
            let v = match order {
                0 => vec![a, -a, b, -b],
                1 => vec![a, b, -a, -b],
                _ => vec![a, b, -b, -a],
            };
            let k = zero_sum_class(&v, &Tolerances::default()).unwrap();
            let back = k.reconstruct();
            for (x, y) in v.iter().zip(&back) {
                prop_assert!((x - y).norm() < 1e-6);
            }
        }
    }
}
