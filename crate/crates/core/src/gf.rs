//! Exact arithmetic in the field tower GF(p) ⊂ GF(q) ⊂ GF(q²).
//!
//! Base-field elements are residue polynomials over GF(p) reduced modulo a
//! monic irreducible `h` of degree `k`; extension elements are pairs `x + y·α`
//! with `α² = d` for a fixed non-square `d` of GF(q)*. Both levels carry a
//! canonical integer index (base-p digits, constant term least significant),
//! and the extension index `idx(x) + q·idx(y)` fixes the vertex order used by
//! every other module in this crate.

use std::fmt;

/// Errors from field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    /// The requested order is not an odd prime power.
    NotOddPrimePower(u64),
    /// Multiplicative inverse of zero.
    DivisionByZero,
    /// Zero is neither a square nor a non-square.
    ZeroNotClassified,
    /// The supplied `d` is zero or a square, so t² − d is reducible.
    NotANonSquare,
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::NotOddPrimePower(q) => write!(f, "{q} is not an odd prime power"),
            GfError::DivisionByZero => write!(f, "division by zero"),
            GfError::ZeroNotClassified => {
                write!(f, "zero is neither a square nor a non-square")
            }
            GfError::NotANonSquare => write!(f, "element is zero or a square"),
        }
    }
}

impl std::error::Error for GfError {}

/// An odd prime power q = p^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    p: u64,
    k: u32,
    q: u64,
}

impl PrimePower {
    /// Factors `q` and rejects anything that is not an odd prime power.
    pub fn from_q(q: u64) -> Result<Self, GfError> {
        if q < 3 || q.is_multiple_of(2) {
            return Err(GfError::NotOddPrimePower(q));
        }
        let mut p = 3;
        while p * p <= q && !q.is_multiple_of(p) {
            p += 2;
        }
        if p * p > q {
            p = q;
        }
        let mut rest = q;
        let mut k = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(GfError::NotOddPrimePower(q));
        }
        Ok(PrimePower { p, k, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// An element of GF(q): k residues mod p, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The lexicographically smallest monic irreducible polynomial of degree `k`
/// over GF(p), scanning coefficient tuples (c_{k−1}, …, c_0) in ascending
/// order. Returned constant-term first with the leading 1 included.
pub fn find_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    if k == 1 {
        return vec![0, 1]; // t
    }
    for m in 0..p.pow(k as u32) {
        let mut h = Vec::with_capacity(k + 1);
        let mut rest = m;
        for _ in 0..k {
            h.push(rest % p);
            rest /= p;
        }
        h.push(1);
        if poly_is_irreducible(&h, p) {
            return h;
        }
    }
    unreachable!("monic irreducibles of every degree exist over GF(p)")
}

/// Remainder of `a` modulo the monic polynomial `b`, coefficients mod p.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > db {
        let lead = *r.last().expect("nonempty");
        if lead != 0 {
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.iter().take(db).enumerate() {
                let sub = lead * bc % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn poly_is_irreducible(h: &[u64], p: u64) -> bool {
    let deg = h.len() - 1;
    for d in 1..=deg / 2 {
        for m in 0..p.pow(d as u32) {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = m;
            for _ in 0..d {
                g.push(rest % p);
                rest /= p;
            }
            g.push(1);
            if poly_rem(h, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_string(h: &[u64]) -> String {
    let mut terms = Vec::new();
    for (e, &c) in h.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        terms.push(match (e, c) {
            (0, _) => c.to_string(),
            (1, 1) => "t".to_string(),
            (1, _) => format!("{c}*t"),
            (_, 1) => format!("t^{e}"),
            (_, _) => format!("{c}*t^{e}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// GF(q) = GF(p)[t]/(h), h the lexicographically smallest monic irreducible
/// of degree k. Operations are pure; elements are canonical after every op.
#[derive(Debug, Clone)]
pub struct BaseField {
    pp: PrimePower,
    h: Vec<u64>,
}

impl BaseField {
    pub fn new(q: u64) -> Result<Self, GfError> {
        let pp = PrimePower::from_q(q)?;
        let h = find_irreducible(pp.p(), pp.k());
        Ok(BaseField { pp, h })
    }

    pub fn p(&self) -> u64 {
        self.pp.p()
    }

    pub fn k(&self) -> u32 {
        self.pp.k()
    }

    pub fn q(&self) -> u64 {
        self.pp.q()
    }

    /// The modulus polynomial, constant term first, leading 1 included.
    pub fn modulus(&self) -> &[u64] {
        &self.h
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k() as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// Element with the given canonical index (base-p digits of `index`).
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(
            index < self.q(),
            "index {index} out of range for GF({})",
            self.q()
        );
        let mut coeffs = Vec::with_capacity(self.k() as usize);
        let mut rest = index;
        for _ in 0..self.k() {
            coeffs.push(rest % self.p());
            rest /= self.p();
        }
        FieldElement { coeffs }
    }

    pub fn index(&self, a: &FieldElement) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p() + c)
    }

    /// All q elements in canonical index order.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.q()).map(|i| self.element(i)).collect()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p();
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % p)
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p();
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + p - y) % p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p();
        let k = self.k() as usize;
        let mut acc = vec![0u64; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x * y) % p;
            }
        }
        // Reduce t^i for i ≥ k using t^k ≡ −(h_0 + … + h_{k−1} t^{k−1}).
        for i in (k..acc.len()).rev() {
            let c = acc[i];
            if c == 0 {
                continue;
            }
            acc[i] = 0;
            for (j, &hc) in self.h.iter().take(k).enumerate() {
                let sub = c * hc % p;
                acc[i - k + j] = (acc[i - k + j] + p - sub) % p;
            }
        }
        acc.truncate(k);
        FieldElement { coeffs: acc }
    }

    /// a^e by square-and-multiply.
    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow(a, self.q() - 2))
    }

    /// Euler-criterion square test: a^((q−1)/2) = 1.
    pub fn is_square(&self, a: &FieldElement) -> Result<bool, GfError> {
        if a.is_zero() {
            return Err(GfError::ZeroNotClassified);
        }
        Ok(self.pow(a, (self.q() - 1) / 2) == self.one())
    }

    /// The non-square of GF(q)* with the smallest canonical index.
    pub fn find_nonsquare(&self) -> FieldElement {
        (1..self.q())
            .map(|i| self.element(i))
            .find(|a| !self.is_square(a).expect("nonzero"))
            .expect("GF(q)* has (q-1)/2 non-squares")
    }

    /// Base-field elements print as their canonical index.
    pub fn element_string(&self, a: &FieldElement) -> String {
        self.index(a).to_string()
    }
}

/// An element x + y·α of GF(q²).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtElement {
    x: FieldElement,
    y: FieldElement,
}

impl ExtElement {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        ExtElement { x, y }
    }

    pub fn x(&self) -> &FieldElement {
        &self.x
    }

    pub fn y(&self) -> &FieldElement {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// GF(q²) = GF(q)[α]/(α² − d) with d a non-square of GF(q)*.
#[derive(Debug, Clone)]
pub struct ExtField {
    base: BaseField,
    d: FieldElement,
}

impl ExtField {
    /// Extends with the canonically smallest non-square.
    pub fn new(base: BaseField) -> Self {
        let d = base.find_nonsquare();
        ExtField { base, d }
    }

    /// Extends with a caller-chosen non-square.
    pub fn with_nonsquare(base: BaseField, d: FieldElement) -> Result<Self, GfError> {
        if d.is_zero() || base.is_square(&d)? {
            return Err(GfError::NotANonSquare);
        }
        Ok(ExtField { base, d })
    }

    pub fn for_q(q: u64) -> Result<Self, GfError> {
        Ok(Self::new(BaseField::new(q)?))
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn d(&self) -> &FieldElement {
        &self.d
    }

    pub fn q(&self) -> u64 {
        self.base.q()
    }

    /// q², the number of elements.
    pub fn order(&self) -> u64 {
        self.base.q() * self.base.q()
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement::new(self.base.zero(), self.base.zero())
    }

    pub fn one(&self) -> ExtElement {
        ExtElement::new(self.base.one(), self.base.zero())
    }

    pub fn alpha(&self) -> ExtElement {
        ExtElement::new(self.base.zero(), self.base.one())
    }

    pub fn embed(&self, a: FieldElement) -> ExtElement {
        ExtElement::new(a, self.base.zero())
    }

    /// Element with canonical index `idx(x) + q·idx(y)`.
    pub fn element(&self, index: u64) -> ExtElement {
        assert!(
            index < self.order(),
            "index {index} out of range for GF({})",
            self.order()
        );
        let q = self.base.q();
        ExtElement::new(self.base.element(index % q), self.base.element(index / q))
    }

    pub fn index(&self, a: &ExtElement) -> u64 {
        self.base.index(&a.x) + self.base.q() * self.base.index(&a.y)
    }

    /// All q² elements; position i holds the element with index i.
    pub fn enumerate_elements(&self) -> Vec<ExtElement> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement::new(self.base.add(&a.x, &b.x), self.base.add(&a.y, &b.y))
    }

    pub fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement::new(self.base.sub(&a.x, &b.x), self.base.sub(&a.y, &b.y))
    }

    pub fn neg(&self, a: &ExtElement) -> ExtElement {
        ExtElement::new(self.base.neg(&a.x), self.base.neg(&a.y))
    }

    /// (x₁+y₁α)(x₂+y₂α) = (x₁x₂ + d·y₁y₂) + (x₁y₂ + x₂y₁)α.
    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let f = &self.base;
        let x = f.add(&f.mul(&a.x, &b.x), &f.mul(&self.d, &f.mul(&a.y, &b.y)));
        let y = f.add(&f.mul(&a.x, &b.y), &f.mul(&a.y, &b.x));
        ExtElement::new(x, y)
    }

    /// Inverse via the conjugate: (x − yα) / (x² − d·y²).
    pub fn inv(&self, a: &ExtElement) -> Result<ExtElement, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        let f = &self.base;
        let norm = f.sub(&f.mul(&a.x, &a.x), &f.mul(&self.d, &f.mul(&a.y, &a.y)));
        let norm_inv = f.inv(&norm)?;
        Ok(ExtElement::new(
            f.mul(&a.x, &norm_inv),
            f.mul(&f.neg(&a.y), &norm_inv),
        ))
    }

    pub fn pow(&self, a: &ExtElement, e: u64) -> ExtElement {
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    /// Euler-criterion square test in GF(q²): a^((q²−1)/2) = 1.
    pub fn is_square(&self, a: &ExtElement) -> Result<bool, GfError> {
        if a.is_zero() {
            return Err(GfError::ZeroNotClassified);
        }
        Ok(self.pow(a, (self.order() - 1) / 2) == self.one())
    }

    /// Extension elements print as "x+y*a" with canonical indices for x, y.
    pub fn element_string(&self, a: &ExtElement) -> String {
        format!("{}+{}*a", self.base.index(&a.x), self.base.index(&a.y))
    }

    /// Field descriptor, e.g. "GF(3^2)/t^2+1; d=4".
    pub fn descriptor(&self) -> String {
        format!(
            "GF({}^{})/{}; d={}",
            self.base.p(),
            self.base.k(),
            poly_string(&self.base.h),
            self.base.index(&self.d)
        )
    }
}
