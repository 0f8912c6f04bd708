use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{denom_lcm, numer_gcd, Rat};

/// Inputs above this degree are rejected by the root-analysis operations.
pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("degenerate input: the zero polynomial")]
    DegenerateInput,
    #[error("interval endpoint {0} is a root")]
    EndpointRoot(String),
    #[error("empty interval: lower bound is not below upper bound")]
    InvalidInterval,
    #[error("degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
}

/// Dense univariate polynomial over the rationals, constant term first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has
/// an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Rat>", from = "Vec<Rat>")]
pub struct Poly {
    coeffs: Vec<Rat>,
}

/// A point of the extended rational line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl From<Rat> for Bound {
    fn from(r: Rat) -> Bound {
        Bound::Finite(r)
    }
}

/// Root census of a polynomial, counted over the complex numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSignature {
    pub distinct: usize,
    pub real: usize,
    pub complex_pairs: usize,
    pub zero_mult: usize,
    pub all_real: bool,
}

impl From<Poly> for Vec<Rat> {
    fn from(p: Poly) -> Vec<Rat> {
        p.coeffs
    }
}

impl From<Vec<Rat>> for Poly {
    fn from(c: Vec<Rat>) -> Poly {
        Poly::new(c)
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| Rat::int(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Poly {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    /// Monic polynomial with the given roots (with multiplicity).
    pub fn from_roots(roots: &[Rat]) -> Poly {
        roots.iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::new(vec![-r, Rat::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Positive rescaling to a primitive integer polynomial; signs are kept.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = denom_lcm(&self.coeffs);
        let ints: Vec<Rat> = self
            .coeffs
            .iter()
            .map(|c| c * &Rat::from_bigint(l.clone()))
            .collect();
        let g = numer_gcd(&ints);
        let g = Rat::from_bigint(g);
        Poly::new(ints.iter().map(|c| c / &g).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| &acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    fn sign_at(&self, b: &Bound) -> i32 {
        match b {
            Bound::Finite(x) => self.eval(x).signum(),
            Bound::PosInf => self.lead().signum(),
            Bound::NegInf => {
                let s = self.lead().signum();
                if self.degree().is_multiple_of(2) {
                    s
                } else {
                    -s
                }
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rat::int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return (Poly::zero(), self.clone());
        }
        let inv_lead = d.lead().recip();
        let mut quot = vec![Rat::zero(); self.degree() - dd + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv_lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    rem[i + j] -= &t;
                }
            }
            quot[i] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic: same complex roots, all simple.
    pub fn squarefree_part(&self) -> Result<Poly, PolyError> {
        self.check_nonzero()?;
        let g = self.gcd(&self.derivative());
        Ok(self.div_rem(&g).0.monic())
    }

    fn check_nonzero(&self) -> Result<(), PolyError> {
        if self.is_zero() {
            return Err(PolyError::DegenerateInput);
        }
        if self.degree() > MAX_DEGREE {
            return Err(PolyError::DegreeTooLarge(self.degree()));
        }
        Ok(())
    }

    /// Sturm chain with every member rescaled to a primitive integer polynomial.
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.primitive()];
        let d = self.derivative().primitive();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push((-r).primitive());
        }
        seq
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn sturm_count(&self, lo: &Bound, hi: &Bound) -> Result<usize, PolyError> {
        self.check_nonzero()?;
        let ordered = match (lo, hi) {
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) | (_, Bound::NegInf) => false,
            (Bound::Finite(a), Bound::Finite(b)) => a < b,
            _ => true,
        };
        if !ordered {
            return Err(PolyError::InvalidInterval);
        }
        for b in [lo, hi] {
            if let Bound::Finite(x) = b {
                if self.eval(x).is_zero() {
                    return Err(PolyError::EndpointRoot(x.to_string()));
                }
            }
        }
        let seq = self.sturm_sequence();
        Ok(variations(&seq, lo) - variations(&seq, hi))
    }

    pub fn real_root_count(&self) -> Result<usize, PolyError> {
        self.sturm_count(&Bound::NegInf, &Bound::PosInf)
    }

    pub fn zero_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn root_signature(&self) -> Result<RootSignature, PolyError> {
        let s = self.squarefree_part()?;
        let distinct = s.degree();
        let real = s.real_root_count()?;
        Ok(RootSignature {
            distinct,
            real,
            complex_pairs: (distinct - real) / 2,
            zero_mult: self.zero_multiplicity(),
            all_real: real == distinct,
        })
    }

    /// All rational roots with multiplicity, in ascending order.
    pub fn rational_roots(&self) -> Result<Vec<Rat>, PolyError> {
        self.check_nonzero()?;
        let z = self.zero_multiplicity();
        let mut roots = vec![Rat::zero(); z];
        let mut q = Poly::new(self.coeffs[z..].to_vec()).primitive();
        if q.degree() == 0 {
            roots.sort();
            return Ok(roots);
        }
        let a0 = q.coeff(0).numer().abs();
        let an = q.lead().numer().abs();
        let mut cands = Vec::new();
        for p in divisors(&a0) {
            for d in divisors(&an) {
                let r = Rat::new(p.clone(), d);
                cands.push(-&r);
                cands.push(r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            while q.degree() > 0 && q.eval(&r).is_zero() {
                q = q.div_rem(&Poly::new(vec![-&r, Rat::one()])).0;
                roots.push(r.clone());
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// Multiplicity of `r` as a root.
    pub fn multiplicity(&self, r: &Rat) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::new(vec![-r, Rat::one()]);
        let mut q = self.clone();
        let mut m = 0;
        while q.degree() > 0 && q.eval(r).is_zero() {
            q = q.div_rem(&lin).0;
            m += 1;
        }
        m
    }

    /// `p(s x)`.
    pub fn rescale_var(&self, s: &Rat) -> Poly {
        let mut f = Rat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &f);
            f = &f * s;
        }
        Poly::new(out)
    }

    /// Companion matrix with ones on the subdiagonal and `-a_i` in the last
    /// column; its characteristic polynomial is the monic form of `self`.
    pub fn companion(&self) -> super::Mat {
        let m = self.monic();
        let n = m.degree();
        let mut c = super::Mat::zeros(n, n);
        for i in 1..n {
            c.set(i, i - 1, Rat::one());
        }
        for i in 0..n {
            c.set(i, n - 1, -m.coeff(i));
        }
        c
    }

    /// Lagrange interpolation through `(xs[i], ys[i])`, distinct abscissae.
    pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Poly {
        assert_eq!(xs.len(), ys.len());
        let mut acc = Poly::zero();
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Poly::one();
            let mut denom = Rat::one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    basis = &basis * &Poly::new(vec![-xj, Rat::one()]);
                    denom = &denom * &(xi - xj);
                }
            }
            acc = &acc + &basis.scale(&(yi / &denom));
        }
        acc
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }
}

fn variations(seq: &[Poly], at: &Bound) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| p.sign_at(at))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 {
                String::new()
            } else if a.is_integer() || i == 0 {
                a.to_string()
            } else {
                format!("({a})")
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = PolyError;

    /// Integer-coefficient syntax such as `x^3+x^2-2x-1` or `2*x^4 - 3`.
    fn from_str(s: &str) -> Result<Poly, PolyError> {
        let err = || PolyError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let mut coeffs: Vec<Rat> = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if coeffs.is_empty() => (1, rest),
                _ => return Err(err()),
            };
            let end = body[1.min(body.len())..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(err());
            }
            let (num, pow) = match term.find('x') {
                None => (term, 0usize),
                Some(ix) => {
                    let num = term[..ix].trim_end_matches('*');
                    let tail = &term[ix + 1..];
                    let pow = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .ok_or_else(err)?
                            .parse::<usize>()
                            .map_err(|_| err())?
                    };
                    (num, pow)
                }
            };
            if pow > MAX_DEGREE {
                return Err(PolyError::DegreeTooLarge(pow));
            }
            let c: BigInt = if num.is_empty() {
                BigInt::one()
            } else {
                num.parse().map_err(|_| err())?
            };
            if coeffs.len() <= pow {
                coeffs.resize(pow + 1, Rat::zero());
            }
            coeffs[pow] += &Rat::from_bigint(c * sign);
        }
        Ok(Poly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(p(&[0, 0, 0, 0, 1]).squarefree_part().unwrap(), p(&[0, 1]));
        // (x-1)^2 (x+1)^2 = x^4 - 2x^2 + 1
        assert_eq!(p(&[1, 0, -2, 0, 1]).squarefree_part().unwrap(), p(&[-1, 0, 1]));
        assert_eq!(p(&[1, 0, 1]).squarefree_part().unwrap(), p(&[1, 0, 1]));
        assert_eq!(Poly::zero().squarefree_part(), Err(PolyError::DegenerateInput));
    }

    #[test]
    fn sturm_examples() {
        let all = (Bound::NegInf, Bound::PosInf);
        assert_eq!(p(&[-1, -2, 1, 1]).sturm_count(&all.0, &all.1).unwrap(), 3);
        assert_eq!(p(&[1, 0, 1]).sturm_count(&all.0, &all.1).unwrap(), 0);
        let pos = p(&[-1, 5, -6, 1]).sturm_count(&Bound::Finite(Rat::zero()), &Bound::PosInf);
        assert_eq!(pos.unwrap(), 3);
    }

    #[test]
    fn sturm_rejects_endpoint_roots_and_bad_intervals() {
        let q = p(&[-1, 0, 1]);
        assert!(matches!(
            q.sturm_count(&Bound::Finite(Rat::one()), &Bound::PosInf),
            Err(PolyError::EndpointRoot(_))
        ));
        assert_eq!(
            q.sturm_count(&Bound::Finite(Rat::int(3)), &Bound::Finite(Rat::int(2))),
            Err(PolyError::InvalidInterval)
        );
        assert_eq!(
            q.sturm_count(&Bound::PosInf, &Bound::PosInf),
            Err(PolyError::InvalidInterval)
        );
    }

    #[test]
    fn sturm_counts_distinct_roots_of_nonsquarefree_input() {
        // (x-1)^2 (x+2)
        let q = &p(&[-1, 1]) * &(&p(&[-1, 1]) * &p(&[2, 1]));
        assert_eq!(q.real_root_count().unwrap(), 2);
    }

    #[test]
    fn root_signature_examples() {
        let q = Poly::from_roots(&[Rat::int(1), Rat::int(2), Rat::int(3), Rat::int(-6)]);
        let s = q.root_signature().unwrap();
        assert_eq!((s.distinct, s.real, s.complex_pairs, s.zero_mult, s.all_real), (4, 4, 0, 0, true));

        let q = &p(&[1, 0, 1]) * &Poly::from_roots(&[Rat::int(1), Rat::int(-2)]);
        let s = q.root_signature().unwrap();
        assert_eq!((s.distinct, s.real, s.complex_pairs, s.zero_mult, s.all_real), (4, 2, 1, 0, false));

        let q = Poly::from_roots(&[Rat::zero(), Rat::zero(), Rat::int(1), Rat::int(-1)]);
        let s = q.root_signature().unwrap();
        assert_eq!((s.distinct, s.real, s.zero_mult), (3, 3, 2));
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(p(&[-1, 0, 1]).rational_roots().unwrap(), vec![Rat::int(-1), Rat::int(1)]);
        assert_eq!(p(&[-3, 2]).rational_roots().unwrap(), vec![Rat::new(3, 2)]);
        assert!(p(&[1, 0, 1]).rational_roots().unwrap().is_empty());
        let q = Poly::from_roots(&[Rat::new(-2, 3), Rat::new(-2, 3), Rat::zero(), Rat::int(5)]);
        assert_eq!(
            q.rational_roots().unwrap(),
            vec![Rat::new(-2, 3), Rat::new(-2, 3), Rat::zero(), Rat::int(5)]
        );
    }

    #[test]
    fn degree_cap() {
        let mut c = vec![0i64; 18];
        c[17] = 1;
        assert_eq!(p(&c).squarefree_part(), Err(PolyError::DegreeTooLarge(17)));
    }

    #[test]
    fn parse_and_display() {
        let q: Poly = "x^3+x^2-2x-1".parse().unwrap();
        assert_eq!(q, p(&[-1, -2, 1, 1]));
        assert_eq!(q.to_string(), "x^3 + x^2 - 2x - 1");
        let q: Poly = "2*x^4 - 3".parse().unwrap();
        assert_eq!(q, p(&[-3, 0, 0, 0, 2]));
        assert_eq!("-x".parse::<Poly>().unwrap(), p(&[0, -1]));
        assert!("x^^2".parse::<Poly>().is_err());
        assert!("".parse::<Poly>().is_err());
        assert!("3y".parse::<Poly>().is_err());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let q = p(&[4, -1, 0, 3]);
        let xs: Vec<Rat> = (0..4).map(Rat::int).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| q.eval(x)).collect();
        assert_eq!(Poly::interpolate(&xs, &ys), q);
    }
}
