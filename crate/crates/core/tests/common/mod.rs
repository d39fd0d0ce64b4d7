//! Independent oracles: brute-force table searches and dense integer
//! matrices, sharing nothing with the library beyond its public types.
#![allow(dead_code)]

use ybtwist::{FiniteSolution, RingMatrix};

pub type Table = Vec<Vec<usize>>;
pub type Dense = Vec<Vec<i64>>;

pub fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Every table whose rows are permutations.
pub fn row_tables(n: usize) -> Vec<Table> {
    let rows = perms(n);
    let mut out: Vec<Table> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                rows.iter().map(move |r| {
                    let mut t = t.clone();
                    t.push(r.clone());
                    t
                })
            })
            .collect()
    }
    out
}

/// `r(x, y) = (σ[x][y], τ[y][x])` is involutive and satisfies
/// `r₁₂ r₂₃ r₁₂ = r₂₃ r₁₂ r₂₃` on every triple.
pub fn is_solution(sigma: &Table, tau: &Table) -> bool {
    let n = sigma.len();
    let r = |x: usize, y: usize| (sigma[x][y], tau[y][x]);
    for x in 0..n {
        for y in 0..n {
            let (u, v) = r(x, y);
            if r(u, v) != (x, y) {
                return false;
            }
            for z in 0..n {
                let lhs = {
                    let (a, b) = r(x, y);
                    let (b, c) = r(b, z);
                    let (a, b) = r(a, b);
                    (a, b, c)
                };
                let rhs = {
                    let (b, c) = r(y, z);
                    let (a, b) = r(x, b);
                    let (b, c) = r(b, c);
                    (a, b, c)
                };
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// All involutive non-degenerate solutions of size `n` by exhaustive search
/// over every pair of permutation-row tables.
pub fn brute_force_solutions(n: usize) -> Vec<(Table, Table)> {
    let tables = row_tables(n);
    let mut out = Vec::new();
    for s in &tables {
        for t in &tables {
            if is_solution(s, t) {
                out.push((s.clone(), t.clone()));
            }
        }
    }
    out
}

pub fn tables_of(sol: &FiniteSolution) -> (Table, Table) {
    let n = sol.size();
    let s = (0..n).map(|x| (0..n).map(|y| sol.sigma(x, y)).collect()).collect();
    let t = (0..n).map(|y| (0..n).map(|x| sol.tau(y, x)).collect()).collect();
    (s, t)
}

/// Smallest relabeling of a solution under the symmetric group.
pub fn canonical_solution(sigma: &Table, tau: &Table) -> (Table, Table) {
    let n = sigma.len();
    perms(n)
        .into_iter()
        .map(|p| {
            let mut s = vec![vec![0; n]; n];
            let mut t = vec![vec![0; n]; n];
            for x in 0..n {
                for y in 0..n {
                    s[p[x]][p[y]] = p[sigma[x][y]];
                    t[p[y]][p[x]] = p[tau[y][x]];
                }
            }
            (s, t)
        })
        .min()
        .expect("at least one permutation")
}

fn is_group(t: &Table, abelian: bool) -> bool {
    let n = t.len();
    (0..n).all(|a| t[0][a] == a && t[a][0] == a)
        && (0..n).all(|a| (0..n).any(|b| t[a][b] == 0))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
        && (!abelian || (0..n).all(|a| (0..n).all(|b| t[a][b] == t[b][a])))
}

/// Every left brace on `{0..n−1}` with identity `0` for both operations.
pub fn brute_force_braces(n: usize) -> Vec<(Table, Table)> {
    let groups: Vec<Table> = row_tables(n).into_iter().filter(|t| is_group(t, false)).collect();
    let mut out = Vec::new();
    for add in groups.iter().filter(|t| is_group(t, true)) {
        for circ in &groups {
            let ok = (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| add[circ[a][add[b][c]]][a] == add[circ[a][b]][circ[a][c]]))
            });
            if ok {
                out.push((add.clone(), circ.clone()));
            }
        }
    }
    out
}

/// Smallest relabeling of a brace under permutations fixing `0`.
pub fn canonical_brace(add: &Table, circ: &Table) -> (Table, Table) {
    let n = add.len();
    perms(n)
        .into_iter()
        .filter(|p| p[0] == 0)
        .map(|p| {
            let mut a = vec![vec![0; n]; n];
            let mut c = vec![vec![0; n]; n];
            for x in 0..n {
                for y in 0..n {
                    a[p[x]][p[y]] = p[add[x][y]];
                    c[p[x]][p[y]] = p[circ[x][y]];
                }
            }
            (a, c)
        })
        .min()
        .expect("identity fixes 0")
}

pub fn dense(m: &RingMatrix) -> Dense {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|c| {
                    let v = m.get(r, c).as_rational().expect("constant entry");
                    assert!(v.is_integer());
                    i64::try_from(v.to_integer()).expect("small entry")
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Dense {
    (0..n).map(|r| (0..n).map(|c| (r == c) as i64).collect()).collect()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![0; m]; n];
    for i in 0..n {
        for j in 0..k {
            if a[i][j] != 0 {
                for l in 0..m {
                    out[i][l] += a[i][j] * b[j][l];
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Dense) -> Dense {
    (0..a[0].len()).map(|c| a.iter().map(|row| row[c]).collect()).collect()
}

/// Matrix of the map `|x,y⟩ ↦ |f(x,y)⟩` on two legs of dimension `n`.
pub fn two_leg_map(n: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Dense {
    let mut m = vec![vec![0; n * n]; n * n];
    for x in 0..n {
        for y in 0..n {
            let (u, v) = f(x, y);
            m[u * n + v][x * n + y] += 1;
        }
    }
    m
}

/// Matrix of `|x₀,…,x_k⟩ ↦ |f(x)⟩` on `legs` legs.
pub fn leg_map(n: usize, legs: usize, f: impl Fn(&[usize]) -> Vec<usize>) -> Dense {
    let dim = n.pow(legs as u32);
    let mut m = vec![vec![0; dim]; dim];
    for i in 0..dim {
        let mut xs = vec![0; legs];
        let mut k = i;
        for l in (0..legs).rev() {
            xs[l] = k % n;
            k /= n;
        }
        let ys = f(&xs);
        let j = ys.iter().fold(0, |acc, &y| acc * n + y);
        m[j][i] += 1;
    }
    m
}

pub fn l2() -> FiniteSolution {
    FiniteSolution::new(2, vec![vec![1, 0], vec![1, 0]], vec![vec![1, 0], vec![1, 0]]).unwrap()
}
