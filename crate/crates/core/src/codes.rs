//! Linear codes over `Z_p`: the Goppa construction from a polynomial and a
//! support list, the narrow-sense binary BCH family, generator/parity
//! conversion, and exact minimum-distance certification by enumeration.
//!
//! Codes are stored canonically: the generator is the reduced row echelon
//! basis of the code, the parity matrix the reduced row echelon basis of the
//! dual. Two codes compare equal exactly when they have the same codewords.

use crate::fplinalg::{LinAlgError, MatModP};
use crate::gf::{is_prime, FieldContext, FieldElement, GfError};
use std::fmt;
use std::fmt::Write as _;

/// Enumeration cap for automatic distance certification (codewords).
pub const DEFAULT_DISTANCE_BUDGET: u128 = 1 << 22;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("support elements at positions {i} and {j} coincide")]
    SupportNotDistinct { i: usize, j: usize },
    #[error("support element at position {index} is a root of the Goppa polynomial")]
    RootInSupport { index: usize },
    #[error("Goppa polynomial must have degree at least 1")]
    GoppaDegree,
    #[error("bch parameters out of range: m={m}, t={t} (need m >= 3, t < 2^(m-1))")]
    BchParams { m: usize, t: u64 },
    #[error("distance enumeration needs {required} codewords, budget is {budget}")]
    DistanceBudget { required: u128, budget: u128 },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Minimum distance; `Infinite` is the convention for the zero code, whose
/// codeword set has no nonzero element. Ordering puts `Infinite` above every
/// finite value, so threshold checks read naturally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(u64),
    Infinite,
}

impl Distance {
    pub fn at_least(self, threshold: u64) -> bool {
        match self {
            Distance::Finite(d) => d >= threshold,
            Distance::Infinite => true,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// Result of exhaustive weight enumeration: the exact minimum distance, a
/// codeword attaining it (absent for the zero code), and how many nonzero
/// codewords were examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceCert {
    pub distance: Distance,
    pub witness: Option<Vec<u64>>,
    pub enumerated: u128,
}

/// Where a code came from. Informative only; equality of codes ignores it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Goppa {
        m: usize,
        g: String,
        support: Vec<u128>,
    },
    Bch {
        m: usize,
        t: u64,
    },
    Explicit,
    Trivial,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Goppa { m, g, support } => {
                let idx: Vec<String> = support.iter().map(u128::to_string).collect();
                write!(f, "goppa m={m} g=({g}) support=[{}]", idx.join(","))
            }
            Provenance::Bch { m, t } => write!(f, "bch m={m} t={t}"),
            Provenance::Explicit => write!(f, "explicit"),
            Provenance::Trivial => write!(f, "trivial"),
        }
    }
}

/// A linear code over `Z_p` of length n and rank k.
#[derive(Debug, Clone)]
pub struct LinearCode {
    p: u64,
    n: usize,
    k: usize,
    generator: MatModP,
    parity: MatModP,
    provenance: Provenance,
    distance_cert: Option<DistanceCert>,
}

impl PartialEq for LinearCode {
    /// Structural equality: same codeword set (canonical generator and
    /// parity agree). Provenance and certification are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.generator == other.generator
            && self.parity == other.parity
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// The zero code {0}: k = 0, every vector is a parity check.
    pub fn trivial(p: u64, n: usize) -> Result<LinearCode, CodeError> {
        let generator = MatModP::zero(p, 0, n)?;
        let parity = MatModP::identity(p, n)?;
        Ok(LinearCode {
            p,
            n,
            k: 0,
            generator,
            parity,
            provenance: Provenance::Trivial,
            distance_cert: Some(DistanceCert {
                distance: Distance::Infinite,
                witness: None,
                enumerated: 0,
            }),
        })
    }

    /// The code spanned by the given rows (not necessarily independent).
    pub fn from_generator(p: u64, n: usize, rows: &[Vec<u64>]) -> Result<LinearCode, CodeError> {
        let gen = MatModP::from_rows(p, n, rows)?.rref().basis_matrix();
        Self::from_canonical_generator(gen, Provenance::Explicit)
    }

    /// The code whose codewords are annihilated by the given rows.
    pub fn from_parity(p: u64, n: usize, rows: &[Vec<u64>]) -> Result<LinearCode, CodeError> {
        let raw = MatModP::from_rows(p, n, rows)?;
        let gen = generator_from_parity(&raw)?;
        Self::from_canonical_generator(gen, Provenance::Explicit)
    }

    fn from_canonical_generator(
        generator: MatModP,
        provenance: Provenance,
    ) -> Result<LinearCode, CodeError> {
        let parity = parity_from_generator(&generator)?;
        let product = generator.mul(&parity.transpose())?;
        assert!(product.is_zero(), "generator rows must be parity checked");
        Ok(LinearCode {
            p: generator.p(),
            n: generator.cols(),
            k: generator.rows(),
            generator,
            parity,
            provenance,
            distance_cert: None,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &MatModP {
        &self.generator
    }

    pub fn parity(&self) -> &MatModP {
        &self.parity
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn distance_cert(&self) -> Option<&DistanceCert> {
        self.distance_cert.as_ref()
    }

    pub fn contains(&self, word: &[u64]) -> bool {
        match self.parity.mul_vec(word) {
            Ok(syndrome) => syndrome.iter().all(|&x| x == 0),
            Err(_) => false,
        }
    }

    /// The codeword with the given coefficients against the generator rows.
    pub fn codeword(&self, coeffs: &[u64]) -> Result<Vec<u64>, CodeError> {
        if coeffs.len() != self.k {
            return Err(CodeError::LinAlg(LinAlgError::WrongVectorLength {
                found: coeffs.len(),
                expected: self.k,
            }));
        }
        let mut word = vec![0u64; self.n];
        for (c, r) in coeffs.iter().zip(0..self.k) {
            for (w, &g) in word.iter_mut().zip(self.generator.row(r)) {
                *w = (*w + c % self.p * g) % self.p;
            }
        }
        Ok(word)
    }

    /// Run exhaustive distance enumeration and remember the certificate.
    pub fn certify_distance(&mut self, budget: u128) -> Result<&DistanceCert, CodeError> {
        let cert = min_distance_bruteforce(self, budget)?;
        self.distance_cert = Some(cert);
        Ok(self.distance_cert.as_ref().unwrap())
    }
}

/// Canonical parity matrix: reduced row echelon basis of the dual code.
/// Rank-deficient input is reduced, not rejected.
pub fn parity_from_generator(gen: &MatModP) -> Result<MatModP, CodeError> {
    let ns = gen.nullspace_basis();
    Ok(MatModP::from_rows(gen.p(), gen.cols(), &ns)?
        .rref()
        .basis_matrix())
}

/// Canonical generator matrix from parity rows: nullspace, row reduced.
pub fn generator_from_parity(par: &MatModP) -> Result<MatModP, CodeError> {
    let ns = par.nullspace_basis();
    Ok(MatModP::from_rows(par.p(), par.cols(), &ns)?
        .rref()
        .basis_matrix())
}

/// Validated inputs for the Goppa construction: a field context for
/// GF(p^m), a polynomial g over that field with deg(g) >= 1, and a support
/// list of distinct non-roots of g. Coefficients ascending by degree.
#[derive(Debug)]
pub struct GoppaInputs<'a> {
    ctx: &'a FieldContext,
    g: Vec<FieldElement>,
    support: Vec<FieldElement>,
}

impl<'a> GoppaInputs<'a> {
    pub fn new(
        ctx: &'a FieldContext,
        g: Vec<FieldElement>,
        support: Vec<FieldElement>,
    ) -> Result<Self, CodeError> {
        let degree = g.iter().rposition(|c| !ctx.is_zero(c));
        match degree {
            None | Some(0) => return Err(CodeError::GoppaDegree),
            Some(_) => {}
        }
        for i in 0..support.len() {
            for j in i + 1..support.len() {
                if support[i] == support[j] {
                    return Err(CodeError::SupportNotDistinct { i, j });
                }
            }
        }
        for (index, alpha) in support.iter().enumerate() {
            if ctx.is_zero(&eval_poly(ctx, &g, alpha)) {
                return Err(CodeError::RootInSupport { index });
            }
        }
        Ok(GoppaInputs { ctx, g, support })
    }

    pub fn degree(&self) -> usize {
        self.g
            .iter()
            .rposition(|c| !self.ctx.is_zero(c))
            .expect("validated at construction")
    }
}

fn eval_poly(ctx: &FieldContext, poly: &[FieldElement], at: &FieldElement) -> FieldElement {
    let mut acc = ctx.zero();
    for c in poly.iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, at), c);
    }
    acc
}

/// Goppa code from (g, L): parity rows alpha_j^i * g(alpha_j)^(-1) for
/// i = 0..r-1, each field entry expanded to its Z_p^m coefficient column.
/// The code is the kernel, so k >= n - r*m always holds.
pub fn goppa(inputs: &GoppaInputs) -> Result<LinearCode, CodeError> {
    let ctx = inputs.ctx;
    let (p, m) = (ctx.p(), ctx.m());
    let r = inputs.degree();
    let n = inputs.support.len();
    let mut rows = vec![vec![0u64; n]; r * m];
    for (j, alpha) in inputs.support.iter().enumerate() {
        let ginv = ctx.inv(&eval_poly(ctx, &inputs.g, alpha))?;
        let mut entry = ginv.clone();
        for i in 0..r {
            for (coord, &bit) in ctx.to_vector(&entry).iter().enumerate() {
                rows[i * m + coord][j] = bit;
            }
            entry = ctx.mul(&entry, alpha);
        }
    }
    let parity_raw = MatModP::from_rows(p, n, &rows)?;
    let gen = generator_from_parity(&parity_raw)?;
    let provenance = Provenance::Goppa {
        m,
        g: ext_poly_string(ctx, &inputs.g),
        support: inputs.support.iter().map(|a| ctx.index_of(a)).collect(),
    };
    let code = LinearCode::from_canonical_generator(gen, provenance)?;
    assert!(
        code.k + r * m >= n,
        "kernel smaller than the rank bound allows"
    );
    Ok(code)
}

/// Render a polynomial with extension-field coefficients. Coefficients that
/// are 0 or 1 print as usual; anything else prints its element index in
/// brackets, e.g. "[5]x^2 + x + [3]".
fn ext_poly_string(ctx: &FieldContext, poly: &[FieldElement]) -> String {
    let mut terms = Vec::new();
    for (i, c) in poly.iter().enumerate().rev() {
        if ctx.is_zero(c) {
            continue;
        }
        let coeff = if *c == ctx.one() {
            String::new()
        } else {
            format!("[{}]", ctx.index_of(c))
        };
        let term = match i {
            0 if coeff.is_empty() => "1".to_string(),
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn ext_poly_mul(ctx: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(ca, cb));
        }
    }
    out
}

/// Narrow-sense binary BCH code of length 2^m - 1 correcting t errors:
/// generator polynomial is the product of the minimal polynomials of
/// alpha^1 .. alpha^2t (one per conjugacy class), alpha primitive. Rank
/// satisfies k >= n - m*t and the distance certificate (attached when
/// 2^k fits the default budget) satisfies d >= 2t + 1.
pub fn bch(m: usize, t: u64) -> Result<LinearCode, CodeError> {
    if m < 3 || t >= 1 << (m - 1) {
        return Err(CodeError::BchParams { m, t });
    }
    let ctx = FieldContext::new(2, m)?;
    let n: usize = (1 << m) - 1;
    let alpha = ctx.primitive().clone();

    // Conjugacy classes {i*2^j mod n} of the required exponents, smallest
    // representative first, each contributing its minimal polynomial once.
    let mut covered = vec![false; n];
    let mut g = vec![ctx.one()];
    for i in 1..=(2 * t) as usize {
        let rep = i % n;
        if rep == 0 || covered[rep] {
            continue;
        }
        let mut class = Vec::new();
        let mut e = rep;
        loop {
            covered[e] = true;
            class.push(e);
            e = e * 2 % n;
            if e == rep {
                break;
            }
        }
        for &e in &class {
            let root = ctx.pow(&alpha, e as u128);
            g = ext_poly_mul(&ctx, &g, &[ctx.neg(&root), ctx.one()]);
        }
    }

    // The product of full conjugacy classes has base-field coefficients.
    let g_base: Vec<u64> = g
        .iter()
        .map(|c| {
            let v = ctx.to_vector(c);
            assert!(
                v[1..].iter().all(|&x| x == 0),
                "minimal polynomial product left the base field"
            );
            v[0]
        })
        .collect();
    let deg = g_base
        .iter()
        .rposition(|&c| c != 0)
        .expect("generator polynomial is nonzero");
    let k = n - deg;
    let mut rows = Vec::with_capacity(k);
    for shift in 0..k {
        let mut row = vec![0u64; n];
        row[shift..shift + deg + 1].copy_from_slice(&g_base[..deg + 1]);
        rows.push(row);
    }
    let gen = MatModP::from_rows(2, n, &rows)?.rref().basis_matrix();
    let mut code = LinearCode::from_canonical_generator(gen, Provenance::Bch { m, t })?;
    assert!(code.k + m * t as usize >= n, "rank below the BCH bound");
    if (2u128)
        .checked_pow(code.k as u32)
        .is_some_and(|c| c <= DEFAULT_DISTANCE_BUDGET)
    {
        let cert = code.certify_distance(DEFAULT_DISTANCE_BUDGET)?;
        assert!(
            cert.distance.at_least(2 * t + 1),
            "certified distance below the designed distance"
        );
    }
    Ok(code)
}

/// Exact minimum distance by enumerating all p^k codewords, walking
/// coefficient vectors in odometer order and updating the running codeword
/// incrementally. Fails without a certificate when p^k exceeds the budget.
pub fn min_distance_bruteforce(code: &LinearCode, budget: u128) -> Result<DistanceCert, CodeError> {
    if code.k == 0 {
        return Ok(DistanceCert {
            distance: Distance::Infinite,
            witness: None,
            enumerated: 0,
        });
    }
    let required = (code.p as u128)
        .checked_pow(code.k as u32)
        .unwrap_or(u128::MAX);
    if required > budget {
        return Err(CodeError::DistanceBudget { required, budget });
    }
    let p = code.p;
    let mut digits = vec![0u64; code.k];
    let mut word = vec![0u64; code.n];
    let mut best: Option<(u64, Vec<u64>)> = None;
    let mut enumerated: u128 = 0;
    loop {
        let mut t = 0;
        while t < code.k && digits[t] == p - 1 {
            digits[t] = 0;
            t += 1;
        }
        if t == code.k {
            break;
        }
        digits[t] += 1;
        // Every digit at position <= t moved by +1 mod p: positions below t
        // rolled from p-1 to 0 and position t stepped up.
        for i in 0..=t {
            for (w, &g) in word.iter_mut().zip(code.generator.row(i)) {
                *w = (*w + g) % p;
            }
        }
        enumerated += 1;
        let weight = word.iter().filter(|&&x| x != 0).count() as u64;
        if best.as_ref().is_none_or(|(b, _)| weight < *b) {
            best = Some((weight, word.clone()));
        }
    }
    let (d, witness) = best.expect("k > 0 yields at least one nonzero codeword");
    Ok(DistanceCert {
        distance: Distance::Finite(d),
        witness: Some(witness),
        enumerated,
    })
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CodeFormatError {
    #[error("line {line}: expected `code p=<p> n=<n> k=<k>`, found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: bad entry {found:?}")]
    BadEntry { line: usize, found: String },
    #[error("expected {expected} generator rows, found {found}")]
    WrongRowCount { expected: usize, found: usize },
    #[error("line {line}: row has {found} entries, expected {expected}")]
    WrongRowLength {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("header claims rank {header}, rows span rank {actual}")]
    RankMismatch { header: usize, actual: usize },
}

pub fn write_code(code: &LinearCode) -> String {
    let mut out = String::new();
    writeln!(out, "code p={} n={} k={}", code.p(), code.n(), code.k()).unwrap();
    writeln!(out, "# provenance: {}", code.provenance()).unwrap();
    for r in 0..code.k() {
        let row: Vec<String> = code.generator().row(r).iter().map(u64::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn parse_code(text: &str) -> Result<LinearCode, CodeFormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(CodeFormatError::BadHeader {
        line: 1,
        found: String::new(),
    })?;
    let bad_header = || CodeFormatError::BadHeader {
        line: hline,
        found: header.to_string(),
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "code" {
        return Err(bad_header());
    }
    let grab = |field: &str, key: &str| -> Result<u64, CodeFormatError> {
        field
            .strip_prefix(key)
            .and_then(|s| s.strip_prefix('='))
            .and_then(|s| s.parse().ok())
            .ok_or_else(bad_header)
    };
    let p = grab(fields[1], "p")?;
    let n = grab(fields[2], "n")? as usize;
    let k = grab(fields[3], "k")? as usize;
    if !is_prime(p) {
        return Err(CodeFormatError::NotPrime(p));
    }
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(k);
    for (line, text) in lines {
        let entries: Result<Vec<u64>, _> = text
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>().map_err(|_| CodeFormatError::BadEntry {
                    line,
                    found: t.to_string(),
                })
            })
            .collect();
        let entries = entries?;
        if entries.len() != n {
            return Err(CodeFormatError::WrongRowLength {
                line,
                found: entries.len(),
                expected: n,
            });
        }
        rows.push(entries);
    }
    if rows.len() != k {
        return Err(CodeFormatError::WrongRowCount {
            expected: k,
            found: rows.len(),
        });
    }
    let code = LinearCode::from_generator(p, n, &rows).map_err(|_| CodeFormatError::NotPrime(p))?;
    if code.k() != k {
        return Err(CodeFormatError::RankMismatch {
            header: k,
            actual: code.k(),
        });
    }
    Ok(code)
}
