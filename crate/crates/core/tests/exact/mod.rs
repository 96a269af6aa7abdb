//! Exact arithmetic over Q(sqrt 2) and a small corpus of correlation
//! matrices whose Gram vectors have entries in Q(sqrt 2)[i].

#![allow(dead_code)]

use elliptope::{
    all_ones, identity, li_tam_complex, li_tam_real, validate_correlation, CorrelationMatrix, Field, Tolerances,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// `a + b sqrt(2)` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Qs2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl Qs2 {
    pub fn rat(num: i64, den: i64) -> Self {
        Qs2 {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::rat(0, 1)
    }

    /// `num / (den sqrt 2)`
    pub fn over_sqrt2(num: i64, den: i64) -> Self {
        Qs2 {
            a: BigRational::zero(),
            b: BigRational::new(BigInt::from(num), BigInt::from(2 * den)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Qs2) -> Qs2 {
        Qs2 {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn sub(&self, o: &Qs2) -> Qs2 {
        Qs2 {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    pub fn mul(&self, o: &Qs2) -> Qs2 {
        let two = BigRational::from_integer(BigInt::from(2));
        Qs2 {
            a: &self.a * &o.a + two * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn inv(&self) -> Qs2 {
        // 1/(a + b r) = (a - b r)/(a^2 - 2 b^2); the norm is nonzero since sqrt 2 is irrational
        let two = BigRational::from_integer(BigInt::from(2));
        let norm = &self.a * &self.a - two * &self.b * &self.b;
        Qs2 {
            a: &self.a / &norm,
            b: -&self.b / &norm,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap() + self.b.to_f64().unwrap() * std::f64::consts::SQRT_2
    }
}

#[derive(Clone, Debug)]
pub struct Cx {
    pub re: Qs2,
    pub im: Qs2,
}

impl Cx {
    pub fn real(x: Qs2) -> Self {
        Cx { re: x, im: Qs2::zero() }
    }

    pub fn imag(x: Qs2) -> Self {
        Cx { re: Qs2::zero(), im: x }
    }

    /// `self * conj(o)`
    pub fn mul_conj(&self, o: &Cx) -> Cx {
        Cx {
            re: self.re.mul(&o.re).add(&self.im.mul(&o.im)),
            im: self.im.mul(&o.re).sub(&self.re.mul(&o.im)),
        }
    }
}

/// Unscaled projector coordinates: `|eta_i|^2`, `Re eta_i conj(eta_j)`,
/// `Im eta_i conj(eta_j)` (complex only). Column scaling does not change rank.
pub fn coords(field: Field, eta: &[Cx]) -> Vec<Qs2> {
    let r = eta.len();
    let mut out: Vec<Qs2> = eta.iter().map(|z| z.mul_conj(z).re).collect();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    out.extend(pairs.iter().map(|&(i, j)| eta[i].mul_conj(&eta[j]).re));
    if field == Field::Complex {
        out.extend(pairs.iter().map(|&(i, j)| eta[i].mul_conj(&eta[j]).im));
    }
    out
}

pub fn exact_rank(mut rows: Vec<Vec<Qs2>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv();
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let factor = rows[i][col].mul(&inv);
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[i][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn basis(r: usize, i: usize) -> Vec<Cx> {
    (0..r)
        .map(|k| Cx::real(if k == i { Qs2::rat(1, 1) } else { Qs2::zero() }))
        .collect()
}

/// Exact Li–Tam vectors, written out independently of the library.
pub fn li_tam_exact(field: Field, r: usize, n: usize) -> Vec<Vec<Cx>> {
    let mut v: Vec<Vec<Cx>> = (0..r).map(|i| basis(r, i)).collect();
    for i in 0..r {
        for j in i + 1..r {
            let mut x = basis(r, i);
            x[i] = Cx::real(Qs2::over_sqrt2(1, 1));
            x[j] = Cx::real(Qs2::over_sqrt2(1, 1));
            v.push(x);
        }
    }
    if field == Field::Complex {
        for i in 0..r {
            for j in i + 1..r {
                let mut x = basis(r, i);
                x[i] = Cx::real(Qs2::over_sqrt2(1, 1));
                x[j] = Cx::imag(Qs2::over_sqrt2(1, 1));
                v.push(x);
            }
        }
    }
    while v.len() < n {
        v.push(basis(r, 0));
    }
    v
}

pub struct Fixture {
    pub name: String,
    pub field: Field,
    pub vectors: Vec<Vec<Cx>>,
    pub matrix: CorrelationMatrix,
}

pub fn fixtures() -> Vec<Fixture> {
    let tol = Tolerances::default();
    let mut out = Vec::new();
    for field in [Field::Real, Field::Complex] {
        for n in 1..=4 {
            out.push(Fixture {
                name: format!("all-ones {n} {field}"),
                field,
                vectors: vec![vec![Cx::real(Qs2::rat(1, 1))]; n],
                matrix: all_ones(n, field, &tol).unwrap(),
            });
            out.push(Fixture {
                name: format!("identity {n} {field}"),
                field,
                vectors: (0..n).map(|i| basis(n, i)).collect(),
                matrix: identity(n, field, &tol).unwrap(),
            });
        }
    }
    for r in 1..=3 {
        for extra in [0, 2] {
            let n = r * (r + 1) / 2 + extra;
            out.push(Fixture {
                name: format!("li-tam real r={r} n={n}"),
                field: Field::Real,
                vectors: li_tam_exact(Field::Real, r, n),
                matrix: li_tam_real(r, n, &tol).unwrap().0,
            });
            let n = r * r + extra;
            out.push(Fixture {
                name: format!("li-tam complex r={r} n={n}"),
                field: Field::Complex,
                vectors: li_tam_exact(Field::Complex, r, n),
                matrix: li_tam_complex(r, n, &tol).unwrap().0,
            });
        }
    }
    // the real 3x3 example checked over the complex field
    let (c3, _) = li_tam_real(2, 3, &tol).unwrap();
    out.push(Fixture {
        name: "3x3 real example over complex".into(),
        field: Field::Complex,
        vectors: li_tam_exact(Field::Real, 2, 3),
        matrix: validate_correlation(&c3.matrix().clone().with_field(Field::Complex), &tol).unwrap(),
    });
    out
}

/// Largest deviation between the exact Gram matrix of `vectors` and `matrix`.
pub fn factor_error(fx: &Fixture) -> f64 {
    let n = fx.matrix.n();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let ip = fx.vectors[i]
                .iter()
                .zip(&fx.vectors[j])
                .fold(Cx::real(Qs2::zero()), |acc, (a, b)| {
                    let t = b.mul_conj(a);
                    Cx {
                        re: acc.re.add(&t.re),
                        im: acc.im.add(&t.im),
                    }
                });
            let got = fx.matrix.get(i, j);
            worst = worst
                .max((got.re - ip.re.to_f64()).abs())
                .max((got.im - ip.im.to_f64()).abs());
        }
    }
    worst
}

pub fn exact_span_dim(fx: &Fixture) -> usize {
    exact_rank(fx.vectors.iter().map(|v| coords(fx.field, v)).collect())
}
