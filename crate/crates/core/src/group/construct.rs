use serde::{Deserialize, Serialize};

use super::{Elem, FiniteGroup, GroupError, Limits};

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => "e".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// The cyclic group `Z_n` with labels `e, g, g^2, ...`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    Limits::default().cyclic(n)
}

/// The dihedral group `D_{2n}` of order `2n`.
///
/// Element `s^e r^i` has index `e * n + i`, matching the presentation
/// `<r, s | r^n = s^2 = 1, s r s = r^-1>`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    Limits::default().dihedral(n)
}

/// The symmetric group `S_n`, elements ordered lexicographically by one-line
/// notation. Products compose right to left: `(x*y)(i) = x(y(i))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    Limits::default().symmetric(n)
}

/// `Z_p ⋊ Z_m` with `s r s^-1 = r^k`. Element `r^a s^b` has index `a * m + b`.
pub fn semidirect_cyclic(params: SemidirectParams) -> Result<FiniteGroup, GroupError> {
    Limits::default().semidirect_cyclic(params)
}

/// `G × H` with `(x, y)` stored at index `x * |H| + y`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    Limits::default().direct_product(g, h)
}

/// Parameters of `Z_p ⋊ Z_m` with action multiplier `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectParams {
    pub p: u64,
    pub m: u64,
    pub k: u64,
}

impl SemidirectParams {
    pub fn new(p: u64, m: u64, k: u64) -> Self {
        SemidirectParams { p, m, k }
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        if self.m == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if !is_prime(self.p) {
            return Err(GroupError::NotPrime(self.p));
        }
        if self.k == 0 || self.k >= self.p {
            return Err(GroupError::BadMultiplier {
                p: self.p,
                k: self.k,
            });
        }
        if pow_mod(self.k, self.m, self.p) != 1 {
            return Err(GroupError::BadAction {
                p: self.p,
                m: self.m,
                k: self.k,
            });
        }
        Ok(())
    }

    /// Whether `-1` lies in the cyclic subgroup generated by `k` mod `p`.
    pub fn has_inversion(&self) -> bool {
        let target = self.p - 1;
        let mut x = 1 % self.p;
        for _ in 0..self.p {
            if x == target {
                return true;
            }
            x = x * self.k % self.p;
        }
        false
    }

    /// Multiplicative order of `k` mod `p`.
    pub fn multiplier_order(&self) -> u64 {
        let mut x = self.k % self.p;
        let mut d = 1;
        while x != 1 {
            x = x * self.k % self.p;
            d += 1;
        }
        d
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        e >>= 1;
    }
    result
}

fn check_order(order: usize, limits: &Limits) -> Result<(), GroupError> {
    if order > limits.order_cap {
        Err(GroupError::OrderCap {
            order,
            cap: limits.order_cap,
        })
    } else {
        Ok(())
    }
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// Lexicographic rank of a permutation of `0..n`.
fn permutation_rank(perm: &[u8]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Cycle notation on points `1..=n`; the identity is `e`.
fn cycle_label(perm: &[u8]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = perm[x] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// Index in [`symmetric`]`(n)` of the transposition swapping points `i` and
/// `j` (0-based).
pub fn transposition(n: usize, i: usize, j: usize) -> Elem {
    let mut perm: Vec<u8> = (0..n as u8).collect();
    perm.swap(i, j);
    permutation_rank(&perm)
}

impl Limits {
    pub fn cyclic(&self, n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        check_order(n, self)?;
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(((a + b) % n) as u32);
            }
        }
        let labels = (0..n).map(|k| Some(power_label("g", k))).collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        FiniteGroup::from_table(format!("cyclic:{n}"), n, mul, labels, Some(gens), self)
    }

    pub fn dihedral(&self, n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let order = 2 * n;
        check_order(order, self)?;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            let (a, i) = (x / n, x % n);
            for y in 0..order {
                let (b, j) = (y / n, y % n);
                // r^i s = s r^-i
                let rot = if b == 0 { (i + j) % n } else { (n - i + j) % n };
                mul.push((((a + b) % 2) * n + rot) as u32);
            }
        }
        let labels = (0..order)
            .map(|x| {
                let (a, i) = (x / n, x % n);
                Some(match (a, i) {
                    (0, i) => power_label("r", i),
                    (_, 0) => "s".to_string(),
                    (_, i) => format!("s{}", power_label("r", i)),
                })
            })
            .collect();
        let gens = if n > 1 { vec![1, n] } else { vec![1] };
        FiniteGroup::from_table(
            format!("dihedral:{n}"),
            order,
            mul,
            labels,
            Some(gens),
            self,
        )
    }

    pub fn symmetric(&self, n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if n > self.symmetric_cap {
            return Err(GroupError::SymmetricCap {
                n,
                cap: self.symmetric_cap,
            });
        }
        let order = factorial(n).unwrap_or(usize::MAX);
        check_order(order, self)?;
        let mut perms = Vec::with_capacity(order);
        let mut p: Vec<u8> = (0..n as u8).collect();
        loop {
            perms.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        let mut mul = Vec::with_capacity(order * order);
        let mut composed = vec![0u8; n];
        for x in &perms {
            for y in &perms {
                for i in 0..n {
                    composed[i] = x[y[i] as usize];
                }
                mul.push(permutation_rank(&composed) as u32);
            }
        }
        let labels = perms.iter().map(|p| Some(cycle_label(p))).collect();
        let gens = match n {
            1 => vec![],
            2 => vec![transposition(2, 0, 1)],
            _ => {
                let long: Vec<u8> = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
                vec![transposition(n, 0, 1), permutation_rank(&long)]
            }
        };
        FiniteGroup::from_table(format!("sym:{n}"), order, mul, labels, Some(gens), self)
    }

    pub fn semidirect_cyclic(&self, params: SemidirectParams) -> Result<FiniteGroup, GroupError> {
        params.validate()?;
        let (p, m) = (params.p as usize, params.m as usize);
        let order = p * m;
        check_order(order, self)?;
        let kpow: Vec<usize> = (0..m)
            .map(|b| pow_mod(params.k, b as u64, params.p) as usize)
            .collect();
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            let (a, b) = (x / m, x % m);
            for y in 0..order {
                let (c, d) = (y / m, y % m);
                // r^a s^b r^c s^d = r^(a + c k^b) s^(b + d)
                let ra = (a + c * kpow[b]) % p;
                let sb = (b + d) % m;
                mul.push((ra * m + sb) as u32);
            }
        }
        let labels = (0..order)
            .map(|x| {
                let (a, b) = (x / m, x % m);
                Some(match (a, b) {
                    (0, 0) => "e".to_string(),
                    (a, 0) => power_label("r", a),
                    (0, b) => power_label("s", b),
                    (a, b) => format!("{}{}", power_label("r", a), power_label("s", b)),
                })
            })
            .collect();
        let mut gens = vec![m];
        if m > 1 {
            gens.push(1);
        }
        let name = format!("semidirect:{},{},{}", params.p, params.m, params.k);
        FiniteGroup::from_table(name, order, mul, labels, Some(gens), self)
    }

    pub fn direct_product(
        &self,
        g: &FiniteGroup,
        h: &FiniteGroup,
    ) -> Result<FiniteGroup, GroupError> {
        let (ng, nh) = (g.order(), h.order());
        let order = ng.checked_mul(nh).unwrap_or(usize::MAX);
        check_order(order, self)?;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            let (x1, x2) = (x / nh, x % nh);
            for y in 0..order {
                let (y1, y2) = (y / nh, y % nh);
                mul.push((g.mul(x1, y1) * nh + h.mul(x2, y2)) as u32);
            }
        }
        let labels = (0..order)
            .map(|x| Some(format!("({},{})", g.label(x / nh), h.label(x % nh))))
            .collect();
        let gens = g
            .generators()
            .iter()
            .map(|&a| a * nh + h.identity())
            .chain(h.generators().iter().map(|&b| g.identity() * nh + b))
            .collect();
        let name = format!("product:{},{}", g.name(), h.name());
        FiniteGroup::from_table(name, order, mul, labels, Some(gens), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_matches_enumeration_order() {
        let mut p: Vec<u8> = (0..4).collect();
        let mut k = 0;
        loop {
            assert_eq!(permutation_rank(&p), k);
            k += 1;
            if !next_permutation(&mut p) {
                break;
            }
        }
        assert_eq!(k, 24);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(cyclic(0).unwrap_err(), GroupError::ZeroOrder);
        assert_eq!(dihedral(0).unwrap_err(), GroupError::ZeroOrder);
        assert_eq!(symmetric(0).unwrap_err(), GroupError::ZeroOrder);
    }

    #[test]
    fn trivial_groups() {
        for g in [cyclic(1).unwrap(), symmetric(1).unwrap()] {
            assert_eq!(g.order(), 1);
            assert_eq!(g.identity(), 0);
            assert_eq!(g.label(0), "e");
        }
    }

    #[test]
    fn cyclic_six_is_abelian() {
        let g = cyclic(6).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        assert_eq!(g.label(2), "g^2");
    }

    #[test]
    fn dihedral_labels_and_relations() {
        let g = dihedral(4).unwrap();
        assert_eq!(g.order(), 8);
        let r = g.element_by_label("r").unwrap();
        let s = g.element_by_label("s").unwrap();
        assert_eq!(g.element_order(r), 4);
        assert_eq!(g.element_order(s), 2);
        // s r s = r^-1
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
        // sr and sr^2 multiply as s r s r^2 = r^-1 r^2 = r
        let sr = g.element_by_label("sr").unwrap();
        let sr2 = g.element_by_label("sr^2").unwrap();
        assert_eq!(g.mul(sr, sr2), r);
        // s and sr^2 commute
        assert!(g.commutes(s, sr2));
        assert!(!dihedral(3).unwrap().is_abelian());
    }

    #[test]
    fn symmetric_three_and_four() {
        let g = symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.label(0), "e");
        let s4 = symmetric(4).unwrap();
        assert_eq!(s4.order(), 24);
        let a = s4.element_by_label("(1 2)").unwrap();
        let b = s4.element_by_label("(3 4)").unwrap();
        assert_eq!(a, transposition(4, 0, 1));
        assert_eq!(b, transposition(4, 2, 3));
        assert!(s4.commutes(a, b));
        assert_eq!(s4.element_by_label("(1 2)(3 4)").unwrap(), s4.mul(a, b));
    }

    #[test]
    fn symmetric_cap() {
        let limits = Limits {
            symmetric_cap: 5,
            ..Limits::default()
        };
        assert_eq!(
            limits.symmetric(6).unwrap_err(),
            GroupError::SymmetricCap { n: 6, cap: 5 }
        );
        // 8! exceeds the default order cap even though 8 is within the
        // symmetric cap.
        assert!(matches!(
            symmetric(8).unwrap_err(),
            GroupError::OrderCap { .. }
        ));
    }

    #[test]
    fn semidirect_examples() {
        let g = semidirect_cyclic(SemidirectParams::new(3, 6, 2)).unwrap();
        assert_eq!(g.order(), 18);
        assert!(!g.is_abelian());
        let g = semidirect_cyclic(SemidirectParams::new(3, 6, 1)).unwrap();
        assert!(g.is_abelian());
        let g = semidirect_cyclic(SemidirectParams::new(7, 3, 2)).unwrap();
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
        // s r s^-1 = r^k
        let r = g.element_by_label("r").unwrap();
        let s = g.element_by_label("s").unwrap();
        assert_eq!(g.conj(s, r), g.pow(r, 2));
    }

    #[test]
    fn semidirect_rejections() {
        assert_eq!(
            semidirect_cyclic(SemidirectParams::new(4, 2, 3)).unwrap_err(),
            GroupError::NotPrime(4)
        );
        assert_eq!(
            semidirect_cyclic(SemidirectParams::new(7, 2, 2)).unwrap_err(),
            GroupError::BadAction { p: 7, m: 2, k: 2 }
        );
        assert_eq!(
            semidirect_cyclic(SemidirectParams::new(7, 3, 7)).unwrap_err(),
            GroupError::BadMultiplier { p: 7, k: 7 }
        );
    }

    #[test]
    fn inversion_in_multiplier_subgroup() {
        assert!(SemidirectParams::new(3, 6, 2).has_inversion());
        assert!(SemidirectParams::new(5, 20, 2).has_inversion());
        assert!(SemidirectParams::new(7, 14, 3).has_inversion());
        assert!(!SemidirectParams::new(7, 3, 2).has_inversion());
        assert!(!SemidirectParams::new(7, 7, 1).has_inversion());
        assert_eq!(SemidirectParams::new(7, 14, 3).multiplier_order(), 6);
    }

    #[test]
    fn product_orders_and_cap() {
        let z2 = cyclic(2).unwrap();
        let v = direct_product(&z2, &z2).unwrap();
        assert_eq!(v.order(), 4);
        assert!(v.is_abelian());
        let p = direct_product(&dihedral(3).unwrap(), &cyclic(5).unwrap()).unwrap();
        assert_eq!(p.order(), 30);
        let small = Limits {
            order_cap: 100,
            ..Limits::default()
        };
        let big = cyclic(20).unwrap();
        assert_eq!(
            small.direct_product(&big, &big).unwrap_err(),
            GroupError::OrderCap {
                order: 400,
                cap: 100
            }
        );
    }

    #[test]
    fn product_above_associativity_cap_is_flagged() {
        let s4 = symmetric(4).unwrap();
        let p = direct_product(&s4, &s4).unwrap();
        assert_eq!(p.order(), 576);
        assert!(!p.associativity_verified());
        assert!(s4.associativity_verified());
    }
}
