//! Built-in example structures.
//!
//! The signed Cayley–Dickson bases are produced by the doubling recursion
//! below, which works on (sign, basis index) pairs and never consults the
//! table machinery; the resulting tables serve as an independent reference
//! for octonion-type claims.

use crate::error::{Error, Result};
use crate::magma::{Elem, FiniteBinarySystem};

/// Z/n under addition.
pub fn cyclic(n: usize) -> Result<FiniteBinarySystem> {
    if n == 0 {
        return Err(Error::Input("cyclic(n) needs n >= 1".into()));
    }
    FiniteBinarySystem::from_fn(n, |a, b| (a + b) % n)
}

/// (Z/2)^k with XOR; element bits are coordinates.
pub fn elementary(k: u32) -> Result<FiniteBinarySystem> {
    if k > 10 {
        return Err(Error::Resource(format!("elementary({k}) is too large")));
    }
    FiniteBinarySystem::from_fn(1 << k, |a, b| a ^ b)
}

pub fn klein() -> FiniteBinarySystem {
    elementary(2).expect("small")
}

/// Dihedral group of order `2n`; index `j*n + i` stands for `r^i s^j`.
pub fn dihedral(n: usize) -> Result<FiniteBinarySystem> {
    if n == 0 {
        return Err(Error::Input("dihedral(n) needs n >= 1".into()));
    }
    FiniteBinarySystem::from_fn(2 * n, |x, y| {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        // r^i s^j r^k s^l = r^(i ± k) s^(j+l)
        let r = if j == 0 { (i + k) % n } else { (i + n - k) % n };
        ((j + l) % 2) * n + r
    })
}

/// Symmetric group on three points; permutations in lexicographic order of
/// their one-line notation, so the identity is index 0.
pub fn symmetric3() -> FiniteBinarySystem {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
    FiniteBinarySystem::from_fn(6, |a, b| {
        // (a*b)(x) = a(b(x))
        let (p, q) = (perms[a], perms[b]);
        index([p[q[0]], p[q[1]], p[q[2]]])
    })
    .expect("valid table")
    .with_names(
        perms
            .iter()
            .map(|p| format!("{}{}{}", p[0], p[1], p[2]))
            .collect(),
    )
    .expect("six names")
}

/// Quaternion group from the rules `i^2 = j^2 = k^2 = ijk = -1`.
///
/// Indexing matches [`cd_basis`]: `2*p + s` for basis `p` in `1, i, j, k` and
/// sign bit `s`.
pub fn q8() -> FiniteBinarySystem {
    // unit products without sign: i*j = k etc; sign table for basis pairs
    const PROD: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    const NEG: [[bool; 4]; 4] = [
        [false, false, false, false],
        [false, true, false, true],
        [false, true, true, false],
        [false, false, true, true],
    ];
    FiniteBinarySystem::from_fn(8, |x, y| {
        let (p, s) = (x / 2, x % 2 == 1);
        let (q, t) = (y / 2, y % 2 == 1);
        let neg = s ^ t ^ NEG[p][q];
        2 * PROD[p][q] + neg as usize
    })
    .expect("valid table")
    .with_names(signed_names(4))
    .expect("names")
}

/// Product of basis units `e_p e_q` in the `level`-th Cayley–Dickson algebra,
/// as `(negative, r)` meaning `±e_r`.
///
/// Doubling rule `(a,b)(c,d) = (ac - d*b, da + bc*)` with `*` conjugation.
pub fn cd_unit_mul(level: u32, p: usize, q: usize) -> (bool, usize) {
    if level == 0 {
        return (false, 0);
    }
    let h = 1usize << (level - 1);
    let conj_neg = |x: usize| x != 0;
    match (p < h, q < h) {
        // (a,0)(c,0) = (ac, 0)
        (true, true) => cd_unit_mul(level - 1, p, q),
        // (a,0)(0,d) = (0, da)
        (true, false) => {
            let (n, r) = cd_unit_mul(level - 1, q - h, p);
            (n, r + h)
        }
        // (0,b)(c,0) = (0, b c*)
        (false, true) => {
            let (n, r) = cd_unit_mul(level - 1, p - h, q);
            (n ^ conj_neg(q), r + h)
        }
        // (0,b)(0,d) = (-d* b, 0)
        (false, false) => {
            let (n, r) = cd_unit_mul(level - 1, q - h, p - h);
            (!(n ^ conj_neg(q - h)), r)
        }
    }
}

/// Signed basis `{±e_0, ..., ±e_(2^k - 1)}` of the k-th Cayley–Dickson algebra,
/// order `2^(k+1)`. Index `2*p + s` is `+e_p` for `s = 0` and `-e_p` for `s = 1`.
pub fn cd_basis(k: u32) -> Result<FiniteBinarySystem> {
    if k > 8 {
        return Err(Error::Resource(format!("cd_basis({k}) is too large")));
    }
    let dim = 1usize << k;
    FiniteBinarySystem::from_fn(2 * dim, |x, y| {
        let (p, s) = (x / 2, x % 2 == 1);
        let (q, t) = (y / 2, y % 2 == 1);
        let (n, r) = cd_unit_mul(k, p, q);
        2 * r + (n ^ s ^ t) as usize
    })?
    .with_names(signed_names(dim))
}

/// Index of `+e_p` / `-e_p` in [`cd_basis`].
pub fn cd_index(p: usize, negative: bool) -> Elem {
    2 * p + negative as usize
}

fn signed_names(dim: usize) -> Vec<String> {
    (0..2 * dim)
        .map(|x| format!("{}e{}", if x % 2 == 0 { '+' } else { '-' }, x / 2))
        .collect()
}

/// Look up a catalog entry by name, e.g. `cyclic` with params `[4]`.
pub fn catalog(name: &str, params: &[usize]) -> Result<FiniteBinarySystem> {
    let one = |what: &str| -> Result<usize> {
        match params {
            [p] => Ok(*p),
            _ => Err(Error::Input(format!("{what} takes exactly one parameter"))),
        }
    };
    let none = |what: &str| -> Result<()> {
        if params.is_empty() {
            Ok(())
        } else {
            Err(Error::Input(format!("{what} takes no parameters")))
        }
    };
    match name {
        "cyclic" => cyclic(one("cyclic")?),
        "klein" => none("klein").map(|_| klein()),
        "s3" => none("s3").map(|_| symmetric3()),
        "q8" => none("q8").map(|_| q8()),
        "dihedral" => dihedral(one("dihedral")?),
        "elementary" => elementary(one("elementary")? as u32),
        "cd_basis" | "cd-basis" => cd_basis(one("cd_basis")? as u32),
        other => Err(Error::Input(format!("unknown catalog entry `{other}`"))),
    }
}

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: &[&str] = &["cyclic", "klein", "s3", "q8", "dihedral", "elementary", "cd_basis"];
