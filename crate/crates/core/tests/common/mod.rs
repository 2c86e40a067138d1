//! Brute-force reference computations shared by the integration tests.
//! None of these call into the library's own algorithms.

#![allow(dead_code)]

use metaloop::FiniteBinarySystem;

pub type Table = Vec<Vec<usize>>;

/// Cayley–Dickson product of two integer vectors of length `2^k`, by
/// `(a,b)(c,d) = (ac - d*b, da + bc*)`.
pub fn cd_mul(x: &[i64], y: &[i64]) -> Vec<i64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let neg = |v: Vec<i64>| v.into_iter().map(|t| -t).collect::<Vec<_>>();
    let add = |u: Vec<i64>, v: Vec<i64>| u.into_iter().zip(v).map(|(s, t)| s + t).collect::<Vec<_>>();
    let left = add(cd_mul(a, c), neg(cd_mul(&conj(d), b)));
    let right = add(cd_mul(d, a), cd_mul(b, &conj(c)));
    [left, right].concat()
}

pub fn conj(x: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = x.iter().map(|t| -t).collect();
    v[0] = x[0];
    v
}

/// Table of the signed basis of level `k` by vector multiplication; index
/// `2p + s` is `(-1)^s e_p`.
pub fn cd_table(k: u32) -> Table {
    let dim = 1usize << k;
    let vec_of = |x: usize| {
        let mut v = vec![0i64; dim];
        v[x / 2] = if x % 2 == 0 { 1 } else { -1 };
        v
    };
    (0..2 * dim)
        .map(|x| {
            (0..2 * dim)
                .map(|y| {
                    let z = cd_mul(&vec_of(x), &vec_of(y));
                    let (p, &c) = z.iter().enumerate().find(|(_, &c)| c != 0).expect("unit");
                    assert_eq!(z.iter().filter(|&&c| c != 0).count(), 1);
                    2 * p + (c < 0) as usize
                })
                .collect()
        })
        .collect()
}

pub fn is_latin(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|i| {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        (0..n).all(|j| {
            let (r, c) = (t[i][j], t[j][i]);
            !std::mem::replace(&mut row[r], true) && !std::mem::replace(&mut col[c], true)
        })
    })
}

pub fn identity(t: &Table) -> Option<usize> {
    let n = t.len();
    (0..n).find(|&e| (0..n).all(|x| t[e][x] == x && t[x][e] == x))
}

pub fn associative(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

/// Elements commuting and associating with everything.
pub fn center(t: &Table) -> Vec<usize> {
    let n = t.len();
    let r = 0..n;
    r.clone()
        .filter(|&z| {
            r.clone().all(|a| t[z][a] == t[a][z])
                && r.clone().all(|a| {
                    r.clone().all(|b| {
                        t[t[z][a]][b] == t[z][t[a][b]]
                            && t[t[a][z]][b] == t[a][t[z][b]]
                            && t[t[a][b]][z] == t[a][t[b][z]]
                    })
                })
        })
        .collect()
}

/// The `y` with `y * x = target`, by scanning.
pub fn solve_right(t: &Table, target: usize, x: usize) -> usize {
    (0..t.len()).find(|&y| t[y][x] == target).expect("Latin")
}

/// `(is_metagroup, is_central_metagroup)` by direct scans.
pub fn metagroup_flags(t: &Table) -> (bool, bool) {
    if !is_latin(t) || identity(t).is_none() {
        return (false, false);
    }
    let n = t.len();
    let z = center(t);
    let meta = (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| z.contains(&solve_right(t, t[t[a][b]][c], t[a][t[b][c]])))
        })
    });
    let central = meta && (0..n).all(|a| (0..n).all(|b| z.contains(&solve_right(t, t[a][b], t[b][a]))));
    (meta, central)
}

pub fn direct(a: &Table, b: &Table) -> Table {
    let (na, nb) = (a.len(), b.len());
    (0..na * nb)
        .map(|x| (0..na * nb).map(|y| a[x / nb][y / nb] * nb + b[x % nb][y % nb]).collect())
        .collect()
}

/// Reduced Latin squares of order `n`, built row by row from permutations
/// with the column constraint checked per row.
pub fn reduced_squares(n: usize) -> Vec<Table> {
    if n == 1 {
        return vec![vec![vec![0]]];
    }
    let perms = permutations(n);
    let mut out = Vec::new();
    let mut rows: Table = vec![(0..n).collect()];
    fn go(n: usize, perms: &[Vec<usize>], rows: &mut Table, out: &mut Vec<Table>) {
        let i = rows.len();
        if i == n {
            out.push(rows.clone());
            return;
        }
        for p in perms.iter().filter(|p| p[0] == i) {
            if rows.iter().all(|r| r.iter().zip(p).all(|(x, y)| x != y)) {
                rows.push(p.clone());
                go(n, perms, rows, out);
                rows.pop();
            }
        }
    }
    go(n, &perms, &mut rows, &mut out);
    out.sort();
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every topology on `n` points, as sorted lists of open-set bitmasks.
pub fn topologies(n: usize) -> Vec<Vec<u32>> {
    let full = (1u32 << n) - 1;
    let middle: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    // choose which proper nonempty subsets are open
    let m = middle.len();
    assert!(m <= 20);
    for mask in 0u64..(1 << m) {
        let mut opens: Vec<u32> = vec![0, full];
        opens.extend((0..m).filter(|i| mask & (1 << i) != 0).map(|i| middle[i]));
        let closed = opens
            .iter()
            .all(|&u| opens.iter().all(|&v| opens.contains(&(u | v)) && opens.contains(&(u & v))));
        if closed {
            opens.sort();
            opens.dedup();
            out.push(opens);
        }
    }
    out
}

pub fn rows(g: &FiniteBinarySystem) -> Table {
    g.rows()
}
