//! Finite monoids given by multiplication tables, and isomorphism search.

use serde_json::{json, Value};

use crate::category::FinCat;
use crate::error::{Error, Result};

pub const DEFAULT_MONOID_CAP: usize = 12;

/// A finite monoid. `table[a][b]` is the product "a then b".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMonoid {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FinMonoid {
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = elements.len();
        if n == 0 || identity >= n {
            return Err(Error::InvalidMonoid("a monoid needs its identity".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidMonoid("table is not n by n over the elements".into()));
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(Error::InvalidMonoid(format!(
                    "identity law fails at `{}`",
                    elements[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidMonoid(format!(
                            "associativity fails at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(FinMonoid {
            elements,
            table,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "elements": self.elements,
            "identity": self.elements[self.identity],
            "table": self.table,
        })
    }
}

/// `Hom(A, A)` under composition.
pub fn end_monoid_of_object(category: &FinCat, object: usize) -> FinMonoid {
    let members = category.hom(object, object).to_vec();
    let pos = |f: usize| members.iter().position(|&g| g == f).expect("closed under composition");
    let table = members
        .iter()
        .map(|&f| {
            members
                .iter()
                .map(|&g| pos(category.compose(f, g).expect("endomorphisms compose")))
                .collect()
        })
        .collect();
    let identity = pos(category.identity(object));
    FinMonoid::new(
        members
            .iter()
            .map(|&f| category.morphism_name(f).to_string())
            .collect(),
        table,
        identity,
    )
    .expect("endomorphism monoid of a valid category is a monoid")
}

/// Searches for an isomorphism `m1 -> m2`, returned as the image of each
/// element of `m1`.
pub fn monoids_isomorphic(m1: &FinMonoid, m2: &FinMonoid, cap: usize) -> Result<Option<Vec<usize>>> {
    for m in [m1, m2] {
        if m.order() > cap {
            return Err(Error::CapExceeded {
                what: "monoid order".into(),
                actual: m.order(),
                cap,
            });
        }
    }
    let n = m1.order();
    if n != m2.order() {
        return Ok(None);
    }
    // Cheap invariants: idempotency and the order of the element's powers.
    let signature = |m: &FinMonoid, a: usize| {
        let mut seen = vec![a];
        let mut x = a;
        loop {
            x = m.mul(x, a);
            if seen.contains(&x) {
                break;
            }
            seen.push(x);
        }
        (m.mul(a, a) == a, seen.len())
    };
    let sig1: Vec<_> = (0..n).map(|a| signature(m1, a)).collect();
    let sig2: Vec<_> = (0..n).map(|a| signature(m2, a)).collect();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[m1.identity()] = m2.identity();
    used[m2.identity()] = true;
    let order: Vec<usize> = (0..n).filter(|&a| a != m1.identity()).collect();

    fn consistent(m1: &FinMonoid, m2: &FinMonoid, map: &[usize]) -> bool {
        let n = map.len();
        for a in 0..n {
            if map[a] == usize::MAX {
                continue;
            }
            for b in 0..n {
                if map[b] == usize::MAX {
                    continue;
                }
                let ab = m1.mul(a, b);
                if map[ab] != usize::MAX && map[ab] != m2.mul(map[a], map[b]) {
                    return false;
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        order: &[usize],
        m1: &FinMonoid,
        m2: &FinMonoid,
        sig1: &[(bool, usize)],
        sig2: &[(bool, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return consistent(m1, m2, map);
        }
        let a = order[k];
        for b in 0..map.len() {
            if used[b] || sig1[a] != sig2[b] {
                continue;
            }
            map[a] = b;
            used[b] = true;
            if consistent(m1, m2, map) && go(k + 1, order, m1, m2, sig1, sig2, map, used) {
                return true;
            }
            used[b] = false;
            map[a] = usize::MAX;
        }
        false
    }

    if go(0, &order, m1, m2, &sig1, &sig2, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// Checks that `map` is a bijective, identity-preserving homomorphism.
pub fn is_monoid_isomorphism(m1: &FinMonoid, m2: &FinMonoid, map: &[usize]) -> bool {
    let n = m1.order();
    if m2.order() != n || map.len() != n || map[m1.identity()] != m2.identity() {
        return false;
    }
    let mut seen = vec![false; n];
    if !map.iter().all(|&b| b < n && !std::mem::replace(&mut seen[b], true)) {
        return false;
    }
    (0..n).all(|a| (0..n).all(|b| map[m1.mul(a, b)] == m2.mul(map[a], map[b])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FinMonoid {
        FinMonoid::new(
            (0..n).map(|i| format!("g{i}")).collect(),
            (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            0,
        )
        .unwrap()
    }

    fn trivial() -> FinMonoid {
        FinMonoid::new(vec!["e".into()], vec![vec![0]], 0).unwrap()
    }

    #[test]
    fn self_isomorphism() {
        let m = cyclic(4);
        let w = monoids_isomorphic(&m, &m, DEFAULT_MONOID_CAP).unwrap().unwrap();
        assert!(is_monoid_isomorphism(&m, &m, &w));
    }

    #[test]
    fn order_mismatch() {
        assert_eq!(monoids_isomorphic(&trivial(), &cyclic(4), 12).unwrap(), None);
    }

    #[test]
    fn cyclic_four_vs_klein_four() {
        let klein = FinMonoid::new(
            (0..4).map(|i| format!("k{i}")).collect(),
            (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect(),
            0,
        )
        .unwrap();
        assert_eq!(monoids_isomorphic(&cyclic(4), &klein, 12).unwrap(), None);
    }

    #[test]
    fn cap_enforced() {
        let m = cyclic(13);
        assert!(matches!(
            monoids_isomorphic(&m, &m, 12),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn invalid_tables_rejected() {
        assert!(FinMonoid::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 1]], 1).is_err());
        assert!(FinMonoid::new(vec![], vec![], 0).is_err());
    }
}
