//! Binary quadratic forms of negative discriminant: reduction, enumeration,
//! Gauss composition, class numbers, and class-group structure.
//!
//! Forms `(a, b, c)` stand for `ax² + bxy + cy²` with `D = b² − 4ac < 0` and
//! `a, c > 0`. Form classes under SL₂(Z) equivalence realize the ideal class
//! group of the quadratic order of discriminant D; the class number and the
//! invariant-factor decomposition computed here are the quantities the rest
//! of the crate verifies against.

use crate::arith;
use crate::Error;

/// A positive definite integral binary quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadraticForm {
    a: i64,
    b: i64,
    c: i64,
}

impl QuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, Error> {
        let d = (b as i128) * (b as i128) - 4 * (a as i128) * (c as i128);
        if a <= 0 || c <= 0 || d >= 0 {
            return Err(Error::NotPositiveDefinite { a, b, c });
        }
        Ok(QuadraticForm { a, b, c })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// True iff |b| ≤ a ≤ c with b ≥ 0 whenever |b| = a or a = c.
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && !(b < 0 && (b == -a || a == c))
    }

    /// The inverse class: (a, −b, c), reduced.
    pub fn inverse(&self) -> QuadraticForm {
        reduce(QuadraticForm {
            a: self.a,
            b: -self.b,
            c: self.c,
        })
        .expect("inverse of a positive definite form is positive definite")
    }
}

/// The reduced identity form of discriminant D: (1, 0, −D/4) or (1, 1, (1−D)/4).
pub fn principal_form(d: i64) -> Result<QuadraticForm, Error> {
    check_discriminant(d)?;
    if d.rem_euclid(4) == 0 {
        QuadraticForm::new(1, 0, -d / 4)
    } else {
        QuadraticForm::new(1, 1, (1 - d) / 4)
    }
}

fn check_discriminant(d: i64) -> Result<(), Error> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::BadDiscriminant(d));
    }
    Ok(())
}

/// Shift b into (−a, a] and fix up c accordingly; the discriminant is kept.
fn normalize(f: QuadraticForm) -> QuadraticForm {
    let (a, b, c) = (f.a, f.b, f.c);
    let k = (b + a - 1).div_euclid(2 * a);
    QuadraticForm {
        a,
        b: b - 2 * k * a,
        c: a * k * k - b * k + c,
    }
}

/// The unique reduced representative of f's class.
pub fn reduce(f: QuadraticForm) -> Result<QuadraticForm, Error> {
    let mut f = normalize(f);
    while f.a > f.c {
        f = normalize(QuadraticForm {
            a: f.c,
            b: -f.b,
            c: f.a,
        });
    }
    if f.a == f.c && f.b < 0 {
        f.b = -f.b;
    }
    Ok(f)
}

/// All reduced forms of discriminant D, sorted lexicographically by (a, b).
pub fn reduced_forms(d: i64) -> Result<Vec<QuadraticForm>, Error> {
    check_discriminant(d)?;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        // b must share the parity of D; solve b² ≡ D (mod 4a) with |b| ≤ a.
        let start = if d.rem_euclid(2) == 0 { -a + (a % 2) } else { -a + ((a + 1) % 2) };
        let mut b = start;
        while b <= a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                // Primitive forms only: h(D) counts classes of primitive
                // forms. For fundamental D every form qualifies.
                if c >= a
                    && !(b < 0 && (b == -a || a == c))
                    && gcd3(a, b, c) == 1
                {
                    out.push(QuadraticForm { a, b, c });
                }
            }
            b += 2;
        }
        a += 1;
    }
    out.sort_unstable_by_key(|f| (f.a, f.b));
    Ok(out)
}

/// h(D): the number of reduced forms of discriminant D.
pub fn class_number(d: i64) -> Result<u64, Error> {
    Ok(reduced_forms(d)?.len() as u64)
}

/// True iff D is a fundamental discriminant: D ≡ 1 (mod 4) squarefree, or
/// D = 4m with m ≡ 2, 3 (mod 4) squarefree.
pub fn is_fundamental(d: i64) -> Result<bool, Error> {
    check_discriminant(d)?;
    if d.rem_euclid(4) == 1 {
        return squarefree(-d as u64);
    }
    let m = d / 4;
    Ok(matches!(m.rem_euclid(4), 2 | 3) && squarefree(-m as u64)?)
}

fn squarefree(n: u64) -> Result<bool, Error> {
    Ok(arith::factor(n)?.factors().iter().all(|&(_, a)| a == 1))
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    let g = arith::gcd(a.unsigned_abs(), b.unsigned_abs());
    arith::gcd(g, c.unsigned_abs()) as i64
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return (a, 1, 0);
    }
    let (g, x, y) = ext_gcd(b, a % b);
    (g, y, x - (a / b) * y)
}

/// Gauss composition of two form classes of the same discriminant; returns
/// the reduced representative. Classical algorithm via extended gcd.
pub fn compose(f: &QuadraticForm, g: &QuadraticForm) -> Result<QuadraticForm, Error> {
    if f.discriminant() != g.discriminant() {
        return Err(Error::DiscriminantMismatch {
            left: f.discriminant(),
            right: g.discriminant(),
        });
    }
    let (f1, f2) = if f.a > g.a { (g, f) } else { (f, g) };
    let (a1, b1, c1) = (f1.a as i128, f1.b as i128, f1.c as i128);
    let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
    let _ = c1;
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (y1, d) = if a2 % a1 == 0 {
        (0, a1)
    } else {
        let (d, u, _) = ext_gcd(a2, a1);
        (u, d)
    };
    let (x2, y2, d1) = if s % d == 0 {
        (0, -1, d)
    } else {
        let (d1, u, v) = ext_gcd(s, d);
        (u, -v, d1)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
    let a3 = v1 * v2;
    let b3 = b2 + 2 * v2 * r;
    let c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
    let raw = QuadraticForm {
        a: i64::try_from(a3).map_err(|_| Error::OutOfRange(u64::MAX))?,
        b: i64::try_from(b3).map_err(|_| Error::OutOfRange(u64::MAX))?,
        c: i64::try_from(c3).map_err(|_| Error::OutOfRange(u64::MAX))?,
    };
    reduce(raw)
}

/// Order of f's class in the form class group of its discriminant.
pub fn form_order(f: &QuadraticForm) -> Result<u64, Error> {
    let f = reduce(*f)?;
    let id = principal_form(f.discriminant())?;
    let mut acc = f;
    let mut order = 1u64;
    while acc != id {
        acc = compose(&acc, &f)?;
        order += 1;
        debug_assert!(order <= 1 << 20, "runaway order computation");
    }
    Ok(order)
}

/// The form class group of discriminant D: reduced forms, class number, and
/// invariant factors d_1 | d_2 | … with Π d_i = h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    pub discriminant: i64,
    pub reduced_forms: Vec<QuadraticForm>,
    pub h: u64,
    pub invariant_factors: Vec<u64>,
}

impl ClassGroup {
    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() == 1
    }

    /// Invariant factors rendered as "d1xd2x…", e.g. "4" or "2x2".
    pub fn structure(&self) -> String {
        self.invariant_factors
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join("x")
    }
}

pub fn class_group(d: i64) -> Result<ClassGroup, Error> {
    let forms = reduced_forms(d)?;
    let h = forms.len() as u64;
    let orders: Vec<u64> = forms
        .iter()
        .map(form_order)
        .collect::<Result<_, _>>()?;
    let invariant_factors = invariant_factors_from_orders(&orders, h);
    Ok(ClassGroup {
        discriminant: d,
        reduced_forms: forms,
        h,
        invariant_factors,
    })
}

/// Recover the invariant factors of an abelian group of order h from the
/// multiset of its element orders.
///
/// For each prime p | h the counts N_k = #{g : ord(g) | p^k} determine the
/// partition of the p-Sylow subgroup: the number of cyclic parts of length
/// ≥ k is log_p(N_k / N_{k−1}). The per-prime partitions are then zipped,
/// largest part with largest part, into invariant factors.
fn invariant_factors_from_orders(orders: &[u64], h: u64) -> Vec<u64> {
    if h == 1 {
        return vec![1];
    }
    let h_factored = arith::factor(h).expect("group order in range");
    let mut partitions: Vec<Vec<u32>> = Vec::new();
    let mut primes: Vec<u64> = Vec::new();
    for &(p, e) in h_factored.factors() {
        // m[k−1] = number of cyclic parts of the p-Sylow subgroup with
        // length ≥ k, read off the counts N_k.
        let mut m: Vec<u32> = Vec::new();
        let mut prev = 1u64;
        for k in 1..=e {
            let pk = p.pow(k);
            let nk = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let ratio = nk / prev;
            debug_assert_eq!(prev * ratio, nk);
            let mut mk = 0u32;
            let mut r = ratio;
            while r > 1 {
                debug_assert_eq!(r % p, 0);
                r /= p;
                mk += 1;
            }
            if mk == 0 {
                break;
            }
            m.push(mk);
            prev = nk;
        }
        let num_parts = m.first().copied().unwrap_or(0) as usize;
        let mut lambda = vec![0u32; num_parts];
        for &mk in &m {
            for part in lambda.iter_mut().take(mk as usize) {
                *part += 1;
            }
        }
        partitions.push(lambda);
        primes.push(p);
    }
    let width = partitions.iter().map(|l| l.len()).max().unwrap_or(1);
    let mut factors = Vec::with_capacity(width);
    for j in 0..width {
        let mut d = 1u64;
        for (p, lambda) in primes.iter().zip(&partitions) {
            if let Some(&e) = lambda.get(j) {
                d *= p.pow(e);
            }
        }
        factors.push(d);
    }
    // Largest factor first so far; the convention is ascending divisibility.
    factors.reverse();
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(a: i64, b: i64, c: i64) -> QuadraticForm {
        QuadraticForm::new(a, b, c).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(f(1, 1, 6)).unwrap(), f(1, 1, 6));
        assert_eq!(reduce(f(3, -1, 2)).unwrap(), f(2, 1, 3));
        assert_eq!(reduce(f(1, 0, 5)).unwrap(), f(1, 0, 5));
        assert!(QuadraticForm::new(1, 5, 1).is_err());
        assert!(QuadraticForm::new(-1, 0, -5).is_err());
    }

    // Oracle for small cases: a reduced form is equivalent to f iff it is
    // reachable by the generators S: (a,b,c)→(c,−b,a) and T^±1:
    // (a,b,c)→(a, b±2a, a±b+c). Breadth-first search with a coefficient cap.
    fn equivalent_reduced_oracle(start: QuadraticForm) -> QuadraticForm {
        use std::collections::{HashSet, VecDeque};
        let cap = 10 * (start.a.abs() + start.b.abs() + start.c.abs()).max(50);
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        queue.push_back((start.a, start.b, start.c));
        let mut best: Option<QuadraticForm> = None;
        while let Some((a, b, c)) = queue.pop_front() {
            if !seen.insert((a, b, c)) || a.abs() > cap || b.abs() > cap || c.abs() > cap {
                continue;
            }
            if a > 0 && c > 0 {
                let g = QuadraticForm { a, b, c };
                if g.is_reduced() {
                    best = Some(g);
                }
            }
            queue.push_back((c, -b, a));
            queue.push_back((a, b + 2 * a, a + b + c));
            queue.push_back((a, b - 2 * a, a - b + c));
        }
        best.expect("every class has a reduced representative")
    }

    #[test]
    fn reduce_matches_bfs_oracle() {
        for (a, b, c) in [(3, -1, 2), (4, 3, 2), (6, 5, 2), (7, 3, 9), (5, -4, 8)] {
            let g = f(a, b, c);
            assert_eq!(reduce(g).unwrap(), equivalent_reduced_oracle(g), "{g:?}");
        }
    }

    #[test]
    fn reduced_forms_examples() {
        assert_eq!(reduced_forms(-4).unwrap(), vec![f(1, 0, 1)]);
        assert_eq!(
            reduced_forms(-23).unwrap(),
            vec![f(1, 1, 6), f(2, -1, 3), f(2, 1, 3)]
        );
        assert_eq!(reduced_forms(-20).unwrap(), vec![f(1, 0, 5), f(2, 2, 3)]);
        assert!(reduced_forms(-5).is_err());
        assert!(reduced_forms(4).is_err());
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number(-163).unwrap(), 1);
        assert_eq!(class_number(-148).unwrap(), 2);
        assert_eq!(class_number(-68).unwrap(), 4);
    }

    #[test]
    fn is_fundamental_examples() {
        assert!(is_fundamental(-20).unwrap());
        assert!(!is_fundamental(-12).unwrap());
        assert!(is_fundamental(-23).unwrap());
        assert!(!is_fundamental(-63).unwrap()); // 9 · −7
        assert!(is_fundamental(-4).unwrap());
        assert!(!is_fundamental(-16).unwrap());
    }

    #[test]
    fn compose_examples() {
        let id23 = principal_form(-23).unwrap();
        let g = f(2, 1, 3);
        assert_eq!(compose(&id23, &g).unwrap(), g);
        assert_eq!(compose(&g, &g).unwrap(), f(2, -1, 3));
        let g20 = f(2, 2, 3);
        assert_eq!(compose(&g20, &g20).unwrap(), principal_form(-20).unwrap());
        assert!(compose(&g, &g20).is_err());
    }

    #[test]
    fn form_order_examples() {
        assert_eq!(form_order(&principal_form(-23).unwrap()).unwrap(), 1);
        assert_eq!(form_order(&principal_form(-68).unwrap()).unwrap(), 1);
        assert_eq!(form_order(&f(2, 1, 3)).unwrap(), 3);
        assert_eq!(form_order(&f(3, 2, 6)).unwrap(), 4);
    }

    #[test]
    fn class_group_examples() {
        let g4 = class_group(-4).unwrap();
        assert_eq!((g4.h, g4.invariant_factors), (1, vec![1]));
        let g68 = class_group(-68).unwrap();
        assert_eq!((g68.h, g68.invariant_factors.clone()), (4, vec![4]));
        assert!(g68.is_cyclic());
        assert_eq!(g68.structure(), "4");
        let g84 = class_group(-84).unwrap();
        assert_eq!((g84.h, g84.invariant_factors.clone()), (4, vec![2, 2]));
        assert_eq!(g84.structure(), "2x2");
        // oracle: orders of all four reduced forms of D=−84 are {1,2,2,2}
        let orders: Vec<u64> = g84
            .reduced_forms
            .iter()
            .map(|f| form_order(f).unwrap())
            .collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
    }

    #[test]
    fn class_group_larger_structures() {
        let g = class_group(-47).unwrap();
        assert_eq!((g.h, g.invariant_factors), (5, vec![5]));
        let g = class_group(-71).unwrap();
        assert_eq!((g.h, g.invariant_factors), (7, vec![7]));
        // D=−1155 = −3·5·7·11: every class has order ≤ 2 (checked below),
        // which forces the elementary group Z2 x Z2 x Z2.
        let g = class_group(-1155).unwrap();
        for f in &g.reduced_forms {
            assert!(form_order(f).unwrap() <= 2);
        }
        assert_eq!(g.h, 8);
        assert_eq!(g.invariant_factors, vec![2, 2, 2]);
    }

    #[test]
    fn form_order_divides_class_number() {
        let mut d = -3i64;
        while d >= -10_000 {
            if matches!(d.rem_euclid(4), 0 | 1) {
                let forms = reduced_forms(d).unwrap();
                let h = forms.len() as u64;
                for g in &forms {
                    assert_eq!(h % form_order(g).unwrap(), 0, "D={d} f={g:?}");
                }
            }
            d -= 1;
        }
    }

    fn arb_form() -> impl Strategy<Value = QuadraticForm> {
        (1i64..60, -120i64..120, 1i64..600)
            .prop_filter_map("positive definite", |(a, b, c)| {
                QuadraticForm::new(a, b, c).ok()
            })
            .prop_filter("bounded discriminant", |f| f.discriminant() >= -100_000)
    }

    proptest! {
        #[test]
        fn reduce_idempotent_and_disc_preserving(g in arb_form()) {
            let r = reduce(g).unwrap();
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.discriminant(), g.discriminant());
            prop_assert_eq!(reduce(r).unwrap(), r);
        }

        #[test]
        fn compose_group_laws(d_idx in 0usize..8, i in 0usize..20, j in 0usize..20, k in 0usize..20) {
            let ds = [-23i64, -20, -68, -84, -47, -71, -148, -420];
            let d = ds[d_idx];
            let forms = reduced_forms(d).unwrap();
            let id = principal_form(d).unwrap();
            let x = forms[i % forms.len()];
            let y = forms[j % forms.len()];
            let z = forms[k % forms.len()];
            prop_assert_eq!(compose(&x, &y).unwrap(), compose(&y, &x).unwrap());
            prop_assert_eq!(compose(&x, &id).unwrap(), x);
            prop_assert_eq!(compose(&x, &x.inverse()).unwrap(), id);
            let xy_z = compose(&compose(&x, &y).unwrap(), &z).unwrap();
            let x_yz = compose(&x, &compose(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(xy_z, x_yz);
        }
    }
}
