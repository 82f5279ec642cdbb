//! Exact arithmetic of Dirichlet characters modulo an odd prime `q` or a
//! product `q = q₁·q₂` of two distinct odd primes: enumeration, Gauss sums,
//! and the two family-average identities (brute force and closed form).
//!
//! Characters are represented by generator exponents with respect to the
//! *smallest* primitive root of each prime factor, so the enumeration order
//! — and therefore every downstream reduction — is deterministic. A full
//! value table of complex roots of unity is memoized per character; each
//! entry costs exactly one `sin_cos` of a rational angle, so the tables are
//! accurate to a few ulps.

use crate::arith::{euler_phi, factorize, gcd, index_table, mod_inverse, primitive_root};
use crate::numerics::{cis, KahanComplex};
use crate::{Complex64, Error, Result};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

/// A supported modulus: an odd prime, or a product of two distinct odd
/// primes, with its unit-group structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulus {
    q: u64,
    factors: Vec<(u64, u32)>,
    phi: u64,
}

impl Modulus {
    /// Validates and constructs a modulus. Accepted shapes: odd prime `q >= 3`
    /// or `q = q₁·q₂` with `q₁ ≠ q₂` both odd primes.
    pub fn new(q: u64) -> Result<Self> {
        if q < 3 || q % 2 == 0 {
            return Err(Error::UnsupportedModulus(q));
        }
        let factors = factorize(q);
        let ok = match factors.len() {
            1 => factors[0].1 == 1,
            2 => factors[0].1 == 1 && factors[1].1 == 1,
            _ => false,
        };
        if !ok {
            return Err(Error::UnsupportedModulus(q));
        }
        let phi = euler_phi(&factors);
        Ok(Self { q, factors, phi })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Ordered `(prime, exponent)` pairs (exponents are always 1 here).
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    pub fn is_prime_modulus(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn is_semiprime(&self) -> bool {
        self.factors.len() == 2
    }

    /// The two prime factors `(q₁, q₂)` with `q₁ < q₂` of a semiprime
    /// modulus.
    pub fn prime_pair(&self) -> Result<(u64, u64)> {
        if self.is_semiprime() {
            Ok((self.factors[0].0, self.factors[1].0))
        } else {
            Err(Error::SemiprimeRequired(self.q))
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_semiprime() {
            write!(f, "{}x{}", self.factors[0].0, self.factors[1].0)
        } else {
            write!(f, "{}", self.q)
        }
    }
}

/// Parity of a character: `Even` means `χ(-1) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// One Dirichlet character modulo `q`, with a memoized value table.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    modulus: Modulus,
    /// Generator exponents, one per prime factor, each in `[0, p-1)`.
    exponents: Vec<u64>,
    /// `values[a] = χ(a)` for `0 <= a < q`; zero off the unit group.
    values: Vec<Complex64>,
    parity: Parity,
    conductor: u64,
    primitive: bool,
    chi_id: usize,
}

impl DirichletCharacter {
    /// `χ(n)` (table lookup on `n mod q`).
    #[inline]
    pub fn value(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus.q) as usize]
    }

    /// Full value table, indexed by residue.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// Generator exponents with respect to the smallest primitive roots.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&r| r == 0)
    }

    /// Position in the deterministic enumeration of characters mod `q`.
    pub fn chi_id(&self) -> usize {
        self.chi_id
    }

    /// Whether the character is even and primitive (the family this crate
    /// averages over).
    pub fn is_even_primitive(&self) -> bool {
        self.primitive && self.parity == Parity::Even
    }
}

/// Discrete-log data for one prime factor.
struct PrimeComponent {
    p: u64,
    index: Vec<u32>,
}

impl PrimeComponent {
    fn new(p: u64) -> Self {
        let g = primitive_root(p);
        Self {
            p,
            index: index_table(p, g),
        }
    }
}

fn build_character(
    m: &Modulus,
    components: &[PrimeComponent],
    cis_phi: &[Complex64],
    exponents: Vec<u64>,
    chi_id: usize,
) -> DirichletCharacter {
    let q = m.q;
    let phi = m.phi;
    let mut values = vec![Complex64::new(0.0, 0.0); q as usize];
    // Common denominator phi = prod (p_i - 1): the phase of χ(a) is the
    // rational [ sum_i r_i * ind_i(a) * (phi / (p_i - 1)) ] / phi, evaluated
    // through one table of phi-th roots of unity.
    let cofactor: Vec<u64> = components.iter().map(|c| phi / (c.p - 1)).collect();
    'residues: for a in 0..q {
        let mut num = 0u64;
        for (i, comp) in components.iter().enumerate() {
            let res = (a % comp.p) as usize;
            if res == 0 {
                continue 'residues; // gcd(a, q) > 1 => χ(a) = 0
            }
            num = (num + exponents[i] * comp.index[res] as u64 * cofactor[i]) % phi;
        }
        values[a as usize] = cis_phi[num as usize];
    }
    // χ(-1) = (-1)^{sum r_i}, since ind_p(-1) = (p-1)/2.
    let parity = if exponents.iter().sum::<u64>() % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    };
    let conductor: u64 = components
        .iter()
        .zip(&exponents)
        .map(|(c, &r)| if r == 0 { 1 } else { c.p })
        .product();
    DirichletCharacter {
        modulus: m.clone(),
        exponents,
        values,
        parity,
        conductor,
        primitive: conductor == q,
        chi_id,
    }
}

/// Enumerate all `φ(q)` Dirichlet characters mod `q` in a deterministic
/// order (lexicographic in the generator exponents, primes ascending).
///
/// The returned set is closed under complex conjugation and pointwise
/// products; parity, conductor, and primitivity flags are set on each
/// character.
pub fn enumerate_characters(m: &Modulus) -> Vec<DirichletCharacter> {
    let components: Vec<PrimeComponent> =
        m.factors.iter().map(|&(p, _)| PrimeComponent::new(p)).collect();
    let phi = m.phi;
    let cis_phi: Vec<Complex64> = (0..phi)
        .map(|k| cis(2.0 * PI * k as f64 / phi as f64))
        .collect();
    let mut out = Vec::with_capacity(phi as usize);
    match components.len() {
        1 => {
            let p = components[0].p;
            for r in 0..(p - 1) {
                let id = out.len();
                out.push(build_character(m, &components, &cis_phi, vec![r], id));
            }
        }
        2 => {
            let (p1, p2) = (components[0].p, components[1].p);
            for r1 in 0..(p1 - 1) {
                for r2 in 0..(p2 - 1) {
                    let id = out.len();
                    out.push(build_character(m, &components, &cis_phi, vec![r1, r2], id));
                }
            }
        }
        _ => unreachable!("modulus validation admits one or two prime factors"),
    }
    out
}

/// The Gauss sum `τ(χ) = Σ_{a mod q} χ(a) e(a/q)` by direct summation.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let q = chi.modulus.q;
    let mut acc = KahanComplex::new();
    for a in 1..q {
        let v = chi.values[a as usize];
        if v.re != 0.0 || v.im != 0.0 {
            acc.add(v * cis(2.0 * PI * a as f64 / q as f64));
        }
    }
    acc.value()
}

/// Gauss sums for a whole enumeration, sharing one table of `q`-th roots of
/// unity. `sums[chi_id] = τ(χ)`.
pub fn family_gauss_sums(family: &[DirichletCharacter]) -> Vec<Complex64> {
    if family.is_empty() {
        return Vec::new();
    }
    let q = family[0].modulus.q;
    let roots: Vec<Complex64> = (0..q)
        .map(|a| cis(2.0 * PI * a as f64 / q as f64))
        .collect();
    family
        .iter()
        .map(|chi| {
            let mut acc = KahanComplex::new();
            for a in 1..q as usize {
                let v = chi.values[a];
                if v.re != 0.0 || v.im != 0.0 {
                    acc.add(v * roots[a]);
                }
            }
            acc.value()
        })
        .collect()
}

/// Split a character of semiprime modulus `q₁q₂` into its components modulo
/// `q₁` and `q₂`, so that `χ(n) = χ₁(n)·χ₂(n)` on the units.
///
/// The returned characters carry their own enumeration ids within the
/// prime-modulus enumerations.
pub fn crt_split(chi: &DirichletCharacter) -> Result<(DirichletCharacter, DirichletCharacter)> {
    let (q1, q2) = chi.modulus.prime_pair()?;
    let split = |p: u64, r: u64| -> DirichletCharacter {
        let m = Modulus::new(p).expect("prime factor of a valid modulus");
        let components = vec![PrimeComponent::new(p)];
        let phi = m.phi;
        let cis_phi: Vec<Complex64> = (0..phi)
            .map(|k| cis(2.0 * PI * k as f64 / phi as f64))
            .collect();
        build_character(&m, &components, &cis_phi, vec![r], r as usize)
    };
    Ok((split(q1, chi.exponents[0]), split(q2, chi.exponents[1])))
}

fn require_coprime(m: &Modulus, a: u64, b: u64) -> Result<()> {
    if gcd(a % m.q, m.q) != 1 || gcd(b % m.q, m.q) != 1 {
        return Err(Error::NonCoprimeArguments { a, b, q: m.q });
    }
    Ok(())
}

/// Brute-force family average `Σ χ̄(a)·χ(b)` over the even primitive
/// characters mod `q`, from a precomputed enumeration.
pub fn family_b_direct_with(family: &[DirichletCharacter], a: u64, b: u64) -> Complex64 {
    let mut acc = KahanComplex::new();
    for chi in family.iter().filter(|c| c.is_even_primitive()) {
        acc.add(chi.value(a).conj() * chi.value(b));
    }
    acc.value()
}

/// Brute-force family average `Σ χ̄(a)·χ(b)` over even primitive characters.
///
/// Rejects arguments sharing a factor with `q`, where the closed form does
/// not apply.
pub fn family_b_direct(m: &Modulus, a: u64, b: u64) -> Result<Complex64> {
    require_coprime(m, a, b)?;
    Ok(family_b_direct_with(&enumerate_characters(m), a, b))
}

/// Closed form of the even-primitive family average for a semiprime modulus:
///
/// `(1/2) Σ_± [φ(q₁)·1_{b ≡ ±a mod q₁} − 1]·[φ(q₂)·1_{b ≡ ±a mod q₂} − 1]`.
pub fn family_b_formula(m: &Modulus, a: u64, b: u64) -> Result<Complex64> {
    require_coprime(m, a, b)?;
    let (q1, q2) = m.prime_pair()?;
    let factor = |p: u64, sign_minus: bool| -> f64 {
        let target = if sign_minus { (p - a % p) % p } else { a % p };
        let indicator = b % p == target;
        if indicator {
            (p - 1) as f64 - 1.0
        } else {
            -1.0
        }
    };
    let plus = factor(q1, false) * factor(q2, false);
    let minus = factor(q1, true) * factor(q2, true);
    Ok(Complex64::new(0.5 * (plus + minus), 0.0))
}

/// Brute-force Gauss-sum-weighted family average
/// `Σ χ(a)·χ̄(b)·τ(χ)` over even primitive characters, from a precomputed
/// enumeration and matching Gauss sums (`taus[chi_id] = τ(χ)`).
pub fn family_d_direct_with(
    family: &[DirichletCharacter],
    taus: &[Complex64],
    a: u64,
    b: u64,
) -> Complex64 {
    let mut acc = KahanComplex::new();
    for chi in family.iter().filter(|c| c.is_even_primitive()) {
        acc.add(chi.value(a) * chi.value(b).conj() * taus[chi.chi_id()]);
    }
    acc.value()
}

/// Brute-force Gauss-sum-weighted family average over even primitive
/// characters mod `q`.
pub fn family_d_direct(m: &Modulus, a: u64, b: u64) -> Result<Complex64> {
    require_coprime(m, a, b)?;
    let family = enumerate_characters(m);
    let taus = family_gauss_sums(&family);
    Ok(family_d_direct_with(&family, &taus, a, b))
}

/// Closed form of the Gauss-sum-weighted family average for a semiprime
/// modulus:
///
/// `(1/2) Σ_± (φ(q₁)·e(±ā₁·q̄₂·b/q₁) + 1)·(φ(q₂)·e(±ā₂·q̄₁·b/q₂) + 1)`,
///
/// where `ā_i` inverts `a` modulo `q_i` and `q̄_i` inverts one prime modulo
/// the other.
pub fn family_d_formula(m: &Modulus, a: u64, b: u64) -> Result<Complex64> {
    require_coprime(m, a, b)?;
    let (q1, q2) = m.prime_pair()?;
    let a1 = mod_inverse(a % q1, q1).expect("coprimality checked");
    let a2 = mod_inverse(a % q2, q2).expect("coprimality checked");
    let q2_inv_mod_q1 = mod_inverse(q2 % q1, q1).expect("distinct primes");
    let q1_inv_mod_q2 = mod_inverse(q1 % q2, q2).expect("distinct primes");
    let k1 = a1 * q2_inv_mod_q1 % q1 * (b % q1) % q1;
    let k2 = a2 * q1_inv_mod_q2 % q2 * (b % q2) % q2;
    let term = |sign_minus: bool| -> Complex64 {
        let (e1, e2) = if sign_minus {
            ((q1 - k1) % q1, (q2 - k2) % q2)
        } else {
            (k1, k2)
        };
        let f1 = (q1 - 1) as f64 * cis(2.0 * PI * e1 as f64 / q1 as f64) + 1.0;
        let f2 = (q2 - 1) as f64 * cis(2.0 * PI * e2 as f64 / q2 as f64) + 1.0;
        f1 * f2
    };
    Ok(0.5 * (term(false) + term(true)))
}

/// Result of sweeping the Gauss-sum factorization identity over all
/// primitive component pairs of a semiprime modulus.
#[derive(Debug, Clone)]
pub struct GaussMultReport {
    pub pairs_checked: usize,
    pub max_abs_deviation: f64,
    /// Human-readable `(r₁, r₂)` exponents of the worst pair.
    pub worst_pair: String,
}

/// For every pair of primitive characters `χ₁ mod q₁`, `χ₂ mod q₂`, check
/// `τ(χ₁χ₂) = χ₁(q₂)·χ₂(q₁)·τ(χ₁)·τ(χ₂)` and report the maximum absolute
/// deviation.
pub fn gauss_multiplicativity_check(m: &Modulus) -> Result<GaussMultReport> {
    let (q1, q2) = m.prime_pair()?;
    let family = enumerate_characters(m);
    let taus = family_gauss_sums(&family);
    let fam1 = enumerate_characters(&Modulus::new(q1)?);
    let fam2 = enumerate_characters(&Modulus::new(q2)?);
    let taus1 = family_gauss_sums(&fam1);
    let taus2 = family_gauss_sums(&fam2);
    let phi2 = q2 - 1;
    let mut worst = 0.0f64;
    let mut worst_pair = String::new();
    let mut pairs = 0usize;
    for c1 in fam1.iter().filter(|c| c.is_primitive()) {
        for c2 in fam2.iter().filter(|c| c.is_primitive()) {
            let r1 = c1.exponents()[0];
            let r2 = c2.exponents()[0];
            // The product character χ₁χ₂ mod q sits at the lexicographic slot.
            let product = &family[(r1 * phi2 + r2) as usize];
            debug_assert_eq!(product.exponents(), &[r1, r2]);
            let lhs = taus[product.chi_id()];
            let rhs = c1.value(q2) * c2.value(q1) * taus1[c1.chi_id()] * taus2[c2.chi_id()];
            let dev = (lhs - rhs).norm();
            pairs += 1;
            if dev > worst {
                worst = dev;
                worst_pair = alloc::format!("(r1={r1}, r2={r2})");
            }
        }
    }
    Ok(GaussMultReport {
        pairs_checked: pairs,
        max_abs_deviation: worst,
        worst_pair,
    })
}

/// Dense `q × q` tables of the two family averages, indexed by
/// `(a mod q)·q + (b mod q)`; entries with `gcd(ab, q) > 1` are zero
/// (characters vanish off the unit group).
///
/// `Direct` sums character values; `ClosedForm` evaluates the two-prime
/// closed forms. Both routes must agree — swapping them is one of the
/// verification suite's checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityRoute {
    Direct,
    ClosedForm,
}

/// Table of `Σ χ̄(a)χ(b)` over even primitive characters for all residue
/// pairs.
pub fn family_b_table(m: &Modulus, route: IdentityRoute) -> Result<Vec<Complex64>> {
    let q = m.q as usize;
    let mut table = vec![Complex64::new(0.0, 0.0); q * q];
    match route {
        IdentityRoute::Direct => {
            let family = enumerate_characters(m);
            let even_primitive: Vec<&DirichletCharacter> =
                family.iter().filter(|c| c.is_even_primitive()).collect();
            for a in 1..q {
                if gcd(a as u64, m.q) != 1 {
                    continue;
                }
                for b in 1..q {
                    if gcd(b as u64, m.q) != 1 {
                        continue;
                    }
                    let mut acc = Complex64::new(0.0, 0.0);
                    for chi in &even_primitive {
                        acc += chi.values[a].conj() * chi.values[b];
                    }
                    table[a * q + b] = acc;
                }
            }
        }
        IdentityRoute::ClosedForm => {
            for a in 1..q {
                if gcd(a as u64, m.q) != 1 {
                    continue;
                }
                for b in 1..q {
                    if gcd(b as u64, m.q) != 1 {
                        continue;
                    }
                    table[a * q + b] = family_b_formula(m, a as u64, b as u64)?;
                }
            }
        }
    }
    Ok(table)
}

/// Table of `Σ χ(a)χ̄(b)τ(χ)` over even primitive characters for all residue
/// pairs.
pub fn family_d_table(m: &Modulus, route: IdentityRoute) -> Result<Vec<Complex64>> {
    let q = m.q as usize;
    let mut table = vec![Complex64::new(0.0, 0.0); q * q];
    match route {
        IdentityRoute::Direct => {
            let family = enumerate_characters(m);
            let taus = family_gauss_sums(&family);
            let even_primitive: Vec<&DirichletCharacter> =
                family.iter().filter(|c| c.is_even_primitive()).collect();
            for a in 1..q {
                if gcd(a as u64, m.q) != 1 {
                    continue;
                }
                for b in 1..q {
                    if gcd(b as u64, m.q) != 1 {
                        continue;
                    }
                    let mut acc = Complex64::new(0.0, 0.0);
                    for chi in &even_primitive {
                        acc += chi.values[a] * chi.values[b].conj() * taus[chi.chi_id()];
                    }
                    table[a * q + b] = acc;
                }
            }
        }
        IdentityRoute::ClosedForm => {
            for a in 1..q {
                if gcd(a as u64, m.q) != 1 {
                    continue;
                }
                for b in 1..q {
                    if gcd(b as u64, m.q) != 1 {
                        continue;
                    }
                    table[a * q + b] = family_d_formula(m, a as u64, b as u64)?;
                }
            }
        }
    }
    Ok(table)
}
