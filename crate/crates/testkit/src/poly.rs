//! Exact polynomials over the rationals, coefficients low to high.

use num::{BigRational, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<BigRational>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect();
        Poly::new(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                let b = other.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                a - b
            })
            .collect();
        Poly::new(coeffs)
    }

    pub fn monic(&self) -> Poly {
        match self.0.last() {
            None => self.clone(),
            Some(lead) => Poly(self.0.iter().map(|c| c / lead).collect()),
        }
    }

    /// Quotient and remainder of polynomial long division.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.0.clone();
        let dd = divisor.degree();
        let lead = divisor.0.last().expect("non-zero divisor").clone();
        if self.is_zero() || self.degree() < dd {
            return (Poly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let coeff = &rem[k + dd] / &lead;
            if !coeff.is_zero() {
                for (j, d) in divisor.0.iter().enumerate() {
                    rem[k + j] -= &coeff * d;
                }
            }
            quot[k] = coeff;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Yun's square-free factorization: `(factor, multiplicity)` pairs whose
    /// product is the monic input. Constant factors are dropped.
    pub fn square_free_factors(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Poly::gcd(&f, &df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut multiplicity = 1;
        while b.degree() > 0 {
            let a = Poly::gcd(&b, &d);
            let next_b = b.div_rem(&a).0;
            let next_c = d.div_rem(&a).0;
            if a.degree() > 0 {
                out.push((a, multiplicity));
            }
            d = next_c.sub(&next_b.derivative());
            b = next_b;
            multiplicity += 1;
        }
        out
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().expect("finite coefficient")).collect()
    }
}
