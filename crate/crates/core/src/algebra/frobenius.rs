//! Rank-two Frobenius algebras on the basis {1, X}.
//!
//! Both algebras share the unit, the counit and `Δ(1)`; Lee's deformation sets
//! `X² = 1` and adds `1 ⊗ 1` to `Δ(X)`.

use serde::{Deserialize, Serialize};

use crate::cube::Label;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FrobeniusKind {
    Khovanov,
    Lee,
}

impl FrobeniusKind {
    pub fn name(self) -> &'static str {
        match self {
            FrobeniusKind::Khovanov => "KHOVANOV",
            FrobeniusKind::Lee => "LEE",
        }
    }
}

pub type Terms1 = Vec<(Label, i64)>;
pub type Terms2 = Vec<((Label, Label), i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSpec {
    pub kind: FrobeniusKind,
    /// `mult[a][b] = m(a ⊗ b)`, indexed by `Label as usize`.
    pub mult: [[Terms1; 2]; 2],
    pub comult: [Terms2; 2],
    pub unit: Label,
    /// `ε(1)`, `ε(X)`.
    pub counit: [i64; 2],
    pub q_homogeneous: bool,
}

use Label::{One, X};


impl FrobeniusSpec {
    pub fn new(kind: FrobeniusKind) -> Self {
        let xx: Terms1 = match kind {
            FrobeniusKind::Khovanov => vec![],
            FrobeniusKind::Lee => vec![(One, 1)],
        };
        let mut dx: Terms2 = vec![((X, X), 1)];
        if kind == FrobeniusKind::Lee {
            dx.push(((One, One), 1));
        }
        Self {
            kind,
            mult: [[vec![(One, 1)], vec![(X, 1)]], [vec![(X, 1)], xx]],
            comult: [vec![((One, X), 1), ((X, One), 1)], dx],
            unit: One,
            counit: [0, 1],
            q_homogeneous: kind == FrobeniusKind::Khovanov,
        }
    }

    pub fn khovanov() -> Self {
        Self::new(FrobeniusKind::Khovanov)
    }

    pub fn lee() -> Self {
        Self::new(FrobeniusKind::Lee)
    }

    pub fn m(&self, a: Label, b: Label) -> &Terms1 {
        &self.mult[a as usize][b as usize]
    }

    pub fn delta(&self, a: Label) -> &Terms2 {
        &self.comult[a as usize]
    }

    /// Checks unit, counit, (co)associativity, (co)commutativity and the Frobenius
    /// relation on all basis tensors.
    pub fn check_axioms(&self) -> bool {
        let basis = [One, X];
        let e = |l: Label| -> V1 {
            let mut v = [0; 2];
            v[l as usize] = 1;
            v
        };
        // Unit and commutativity.
        for a in basis {
            if self.mul_v(&e(self.unit), &e(a)) != e(a) || self.mul_v(&e(a), &e(self.unit)) != e(a) {
                return false;
            }
            for b in basis {
                if self.mul_v(&e(a), &e(b)) != self.mul_v(&e(b), &e(a)) {
                    return false;
                }
                for c in basis {
                    let l = self.mul_v(&self.mul_v(&e(a), &e(b)), &e(c));
                    let r = self.mul_v(&e(a), &self.mul_v(&e(b), &e(c)));
                    if l != r {
                        return false;
                    }
                }
            }
        }
        for a in basis {
            let d = self.delta_v(&e(a));
            // Counit: (ε ⊗ id)Δ = id = (id ⊗ ε)Δ.
            let mut left = [0; 2];
            let mut right = [0; 2];
            for x in 0..2 {
                for y in 0..2 {
                    left[y] += self.counit[x] * d[x][y];
                    right[x] += self.counit[y] * d[x][y];
                }
            }
            if left != e(a) || right != e(a) {
                return false;
            }
            // Cocommutativity.
            for x in 0..2 {
                for y in 0..2 {
                    if d[x][y] != d[y][x] {
                        return false;
                    }
                }
            }
            // Coassociativity: (Δ ⊗ id)Δ = (id ⊗ Δ)Δ.
            let mut l3 = [[[0i64; 2]; 2]; 2];
            let mut r3 = [[[0i64; 2]; 2]; 2];
            for x in 0..2 {
                for y in 0..2 {
                    if d[x][y] == 0 {
                        continue;
                    }
                    let dx = self.delta_v(&e(basis[x]));
                    let dy = self.delta_v(&e(basis[y]));
                    for u in 0..2 {
                        for v in 0..2 {
                            l3[u][v][y] += d[x][y] * dx[u][v];
                            r3[x][u][v] += d[x][y] * dy[u][v];
                        }
                    }
                }
            }
            if l3 != r3 {
                return false;
            }
        }
        // Frobenius: Δ∘m = (m ⊗ id)(id ⊗ Δ).
        for a in basis {
            for b in basis {
                let lhs = self.delta_v(&self.mul_v(&e(a), &e(b)));
                let mut rhs = [[0i64; 2]; 2];
                let db = self.delta_v(&e(b));
                for x in 0..2 {
                    for y in 0..2 {
                        if db[x][y] == 0 {
                            continue;
                        }
                        let m = self.mul_v(&e(a), &e(basis[x]));
                        for u in 0..2 {
                            rhs[u][y] += db[x][y] * m[u];
                        }
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    fn mul_v(&self, a: &V1, b: &V1) -> V1 {
        let mut out = [0; 2];
        for x in 0..2 {
            for y in 0..2 {
                if a[x] * b[y] == 0 {
                    continue;
                }
                for &(l, c) in &self.mult[x][y] {
                    out[l as usize] += a[x] * b[y] * c;
                }
            }
        }
        out
    }

    fn delta_v(&self, a: &V1) -> [[i64; 2]; 2] {
        let mut out = [[0; 2]; 2];
        for x in 0..2 {
            for &((l, r), c) in &self.comult[x] {
                out[l as usize][r as usize] += a[x] * c;
            }
        }
        out
    }
}

type V1 = [i64; 2];

/// Looks a spec up by name (`KHOVANOV` or `LEE`, case-insensitive).
pub fn frobenius_tables(name: &str) -> Result<FrobeniusSpec> {
    match name.to_ascii_uppercase().as_str() {
        "KHOVANOV" | "KH" => Ok(FrobeniusSpec::khovanov()),
        "LEE" => Ok(FrobeniusSpec::lee()),
        _ => Err(Error::UnknownFrobenius(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations() {
        let kh = frobenius_tables("KHOVANOV").unwrap();
        for v in [One, X] {
            assert_eq!(kh.m(One, v), &vec![(v, 1)]);
        }
        assert!(kh.m(X, X).is_empty());
        let lee = frobenius_tables("lee").unwrap();
        assert_eq!(lee.m(X, X), &vec![(One, 1)]);
        assert_eq!(lee.delta(X).len(), 2);
        assert!(matches!(frobenius_tables("sl3"), Err(Error::UnknownFrobenius(_))));
    }

    #[test]
    fn axioms_hold() {
        assert!(FrobeniusSpec::khovanov().check_axioms());
        assert!(FrobeniusSpec::lee().check_axioms());
    }

    #[test]
    fn broken_table_is_caught() {
        let mut bad = FrobeniusSpec::khovanov();
        bad.comult[1] = vec![((X, One), 1)];
        assert!(!bad.check_axioms());
    }
}
