//! Isomorphism-type summaries of abelian groups.

use super::int::Int;
use std::fmt;

/// `ℤ^free_rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_t` with `dᵢ ≥ 2` and `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupDescriptor {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl GroupDescriptor {
    pub fn trivial() -> Self {
        GroupDescriptor::default()
    }

    pub fn free(rank: usize) -> Self {
        GroupDescriptor { free_rank: rank, torsion: Vec::new() }
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning ℤ, 1 dropped)
    /// into invariant-factor form.
    pub fn from_cyclic_orders(orders: &[Int]) -> Self {
        let mut free = 0;
        let mut finite = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        GroupDescriptor { free_rank: free, torsion: invariant_factors(&finite) }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_i64(&self) -> Vec<i64> {
        self.torsion.iter().map(|d| d.to_i64().expect("small divisor")).collect()
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let mut orders: Vec<Int> = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        let mut d = GroupDescriptor::from_cyclic_orders(&orders);
        d.free_rank = self.free_rank + other.free_rank;
        d
    }
}

/// Converts cyclic orders (all ≥ 2) into a divisibility chain via prime powers.
fn invariant_factors(orders: &[Int]) -> Vec<Int> {
    if orders.is_empty() {
        return Vec::new();
    }
    // Repeatedly replace (a, b) by (gcd, lcm); converges to the chain.
    let mut v: Vec<Int> = orders.to_vec();
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = v[i].gcd(&v[j]);
            let l = (&v[i] * &v[j]).div_exact(&g).unwrap();
            v[i] = g;
            v[j] = l;
        }
    }
    v.retain(|d| !d.is_one());
    v
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = fg_parts(self);
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn fg_parts(g: &GroupDescriptor) -> Vec<String> {
    let mut parts = Vec::new();
    match g.free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for d in &g.torsion {
        parts.push(format!("Z/{d}"));
    }
    parts
}

/// `(ℚ/ℤ)^qz_rank ⊕ ℚ^q_rank ⊕ fg_part`.
///
/// The three pieces are reported independently. This is legitimate because ℚ
/// and ℚ/ℤ are divisible, hence injective ℤ-modules: any extension of a group
/// by a divisible group splits, so the isomorphism type is determined by the
/// divisible ranks together with the finitely generated quotient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MixedGroupDescriptor {
    pub qz_rank: usize,
    pub q_rank: usize,
    pub fg_part: GroupDescriptor,
}

impl MixedGroupDescriptor {
    pub fn is_trivial(&self) -> bool {
        self.qz_rank == 0 && self.q_rank == 0 && self.fg_part.is_trivial()
    }
}

impl fmt::Display for MixedGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = fg_parts(&self.fg_part);
        match self.qz_rank {
            0 => {}
            1 => parts.push("Q/Z".to_string()),
            r => parts.push(format!("(Q/Z)^{r}")),
        }
        match self.q_rank {
            0 => {}
            1 => parts.push("Q".to_string()),
            r => parts.push(format!("Q^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(GroupDescriptor::trivial().to_string(), "0");
        assert_eq!(GroupDescriptor::free(1).to_string(), "Z");
        let g = GroupDescriptor::from_cyclic_orders(&[Int::from(0), Int::from(2), Int::from(3)]);
        assert_eq!(g.to_string(), "Z + Z/6");
        let m = MixedGroupDescriptor { qz_rank: 2, q_rank: 1, fg_part: GroupDescriptor::trivial() };
        assert_eq!(m.to_string(), "(Q/Z)^2 + Q");
    }

    #[test]
    fn chain_normalization() {
        let g = GroupDescriptor::from_cyclic_orders(&[Int::from(4), Int::from(6), Int::from(1)]);
        assert_eq!(g.torsion, vec![Int::from(2), Int::from(12)]);
    }
}
