//! Brute-force reference computations used by the verifier. None of these
//! share code with the engine they check.

use equicount_core::partition::partitions;
use equicount_core::Partition;

/// Irreducible characters of `S_m` for small `m`, rows and columns in
/// canonical partition order.
///
/// Permutation characters of the Young subgroups are counted directly as
/// fixed tabloids, Kostka numbers by enumerating semistandard tableaux, and
/// the unitriangular relation `π^ν = Σ_μ K_{μν} χ^μ` is solved for `χ`.
pub fn brute_force_characters(m: u32) -> Vec<Vec<i64>> {
    let parts = partitions(m);
    let n = parts.len();
    let reps: Vec<Vec<usize>> = parts.iter().map(representative).collect();
    // perm[ν][λ]
    let perm: Vec<Vec<i64>> = parts
        .iter()
        .map(|nu| reps.iter().map(|s| fixed_tabloids(nu, s)).collect())
        .collect();
    let kostka: Vec<Vec<i64>> = parts
        .iter()
        .map(|mu| parts.iter().map(|nu| kostka_number(mu, nu)).collect())
        .collect();
    let mut chi = vec![vec![0i64; n]; n];
    for v in 0..n {
        assert_eq!(kostka[v][v], 1);
        for c in 0..n {
            let below: i64 = (0..v).map(|u| kostka[u][v] * chi[u][c]).sum();
            chi[v][c] = perm[v][c] - below;
        }
        for u in v + 1..n {
            // Dominance refines reverse lexicographic order.
            assert_eq!(kostka[u][v], 0, "Kostka matrix is not triangular");
        }
    }
    chi
}

/// A permutation of `0..m` with the given cycle type, consecutive cycles.
fn representative(class: &Partition) -> Vec<usize> {
    let m = class.size() as usize;
    let mut s = vec![0; m];
    let mut start = 0;
    for &c in class.parts() {
        let c = c as usize;
        for j in 0..c {
            s[start + j] = start + (j + 1) % c;
        }
        start += c;
    }
    s
}

/// Labelings of `0..m` with row `i` used `shape[i]` times, invariant under `s`.
fn fixed_tabloids(shape: &Partition, s: &[usize]) -> i64 {
    fn go(pos: usize, label: &mut Vec<usize>, left: &mut Vec<u32>, s: &[usize]) -> i64 {
        if pos == label.len() {
            return i64::from((0..label.len()).all(|x| label[s[x]] == label[x]));
        }
        let mut total = 0;
        for r in 0..left.len() {
            if left[r] > 0 {
                left[r] -= 1;
                label[pos] = r;
                total += go(pos + 1, label, left, s);
                left[r] += 1;
            }
        }
        total
    }
    let mut left = shape.parts().to_vec();
    go(0, &mut vec![0; s.len()], &mut left, s)
}

/// Semistandard tableaux of shape `mu` with content `nu`.
fn kostka_number(mu: &Partition, nu: &Partition) -> i64 {
    let cells: Vec<(usize, usize)> = mu
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    fn go(
        i: usize,
        cells: &[(usize, usize)],
        fill: &mut Vec<Vec<usize>>,
        left: &mut Vec<u32>,
    ) -> i64 {
        if i == cells.len() {
            return 1;
        }
        let (r, c) = cells[i];
        let mut total = 0;
        for v in 0..left.len() {
            if left[v] == 0 {
                continue;
            }
            if c > 0 && fill[r][c - 1] > v {
                continue;
            }
            if r > 0 && fill[r - 1][c] >= v {
                continue;
            }
            left[v] -= 1;
            fill[r][c] = v;
            total += go(i + 1, cells, fill, left);
            left[v] += 1;
        }
        total
    }
    let mut fill: Vec<Vec<usize>> = mu.parts().iter().map(|&l| vec![0; l as usize]).collect();
    go(0, &cells, &mut fill, &mut nu.parts().to_vec())
}

/// Exhaustive singular-cubic test over F_3.
///
/// Every nonzero ternary cubic over F_3 is evaluated on all 13 points of
/// PG(2, 3). For each cubic two bitmasks are kept: the points where it
/// vanishes, and the points where it and all three partial derivatives
/// vanish.
pub struct CubicOracle {
    points: Vec<[u8; 3]>,
    masks: Vec<(u16, u16)>,
}

/// Exponents of the ten cubic monomials.
const MONOMIALS: [[u8; 3]; 10] = [
    [3, 0, 0],
    [0, 3, 0],
    [0, 0, 3],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [0, 2, 1],
    [1, 0, 2],
    [0, 1, 2],
    [1, 1, 1],
];

fn eval_mod3(coeffs: &[u8; 10], exps: &[[u8; 3]; 10], scale: &[u8; 10], p: [u8; 3]) -> u8 {
    let mut acc = 0u32;
    for ((&c, e), &k) in coeffs.iter().zip(exps).zip(scale) {
        if c == 0 || k == 0 {
            continue;
        }
        let mut term = u32::from(c) * u32::from(k);
        for v in 0..3 {
            for _ in 0..e[v] {
                term *= u32::from(p[v]);
            }
        }
        acc += term;
    }
    (acc % 3) as u8
}

impl CubicOracle {
    pub fn new() -> Self {
        let mut points = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                points.push([1, a, b]);
            }
        }
        for a in 0..3 {
            points.push([0, 1, a]);
        }
        points.push([0, 0, 1]);

        // Formal partial derivatives: d/dv of x^e is e_v x^(e - 1_v).
        let mut derivs = Vec::new();
        for v in 0..3 {
            let mut exps = MONOMIALS;
            let mut scale = [0u8; 10];
            for (i, e) in exps.iter_mut().enumerate() {
                if e[v] > 0 {
                    scale[i] = e[v] % 3;
                    e[v] -= 1;
                }
            }
            derivs.push((exps, scale));
        }
        let ones = [1u8; 10];

        let mut masks = Vec::with_capacity(59048);
        for code in 1..3u32.pow(10) {
            let mut coeffs = [0u8; 10];
            let mut c = code;
            for x in coeffs.iter_mut() {
                *x = (c % 3) as u8;
                c /= 3;
            }
            let (mut vanish, mut sing) = (0u16, 0u16);
            for (j, &p) in points.iter().enumerate() {
                if eval_mod3(&coeffs, &MONOMIALS, &ones, p) != 0 {
                    continue;
                }
                vanish |= 1 << j;
                if derivs.iter().all(|(e, s)| eval_mod3(&coeffs, e, s, p) == 0) {
                    sing |= 1 << j;
                }
            }
            masks.push((vanish, sing));
        }
        CubicOracle { points, masks }
    }

    /// Normalized coordinates of the points, in index order.
    pub fn points(&self) -> &[[u8; 3]] {
        &self.points
    }

    /// Whether some nonzero cubic vanishes on all the indexed points and is
    /// singular at `points[i]`.
    pub fn singular_through(&self, indices: &[usize], i: usize) -> bool {
        let need: u16 = indices.iter().fold(0, |acc, &j| acc | 1 << j);
        let at = 1u16 << indices[i];
        self.masks.iter().any(|&(v, s)| v & need == need && s & at != 0)
    }
}

impl Default for CubicOracle {
    fn default() -> Self {
        Self::new()
    }
}
