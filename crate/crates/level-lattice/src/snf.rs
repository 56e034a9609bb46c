//! Exact 2×2 integer Hermite/Smith normal forms with transform tracking.
//!
//! Everything is done over `i128`; the lattices handled here have entries
//! bounded by the level N (desk scale), so overflow is not a concern.

/// Extended gcd: returns `(g, s, t)` with `g = gcd(a, b) ≥ 0` and
/// `s·a + t·b = g`.
pub fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 { (-a, -1, 0) } else { (a, 1, 0) }
    } else {
        let (g, s, t) = extended_gcd(b, a.rem_euclid(b));
        // g = s·b + t·(a − ⌊a/b⌋·b)
        (g, t, s - a.div_euclid(b) * t)
    }
}

/// A 2×2 integer matrix, row-major.
pub type Mat2 = [[i128; 2]; 2];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0i128; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn det(m: &Mat2) -> i128 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Smith normal form with transforms: returns `(d, u, v)` with
/// `u · m · v = diag(d.0, d.1)`, `u`, `v` unimodular, `0 ≤ d.0`, `d.0 | d.1`.
pub fn smith(m: &Mat2) -> ((i128, i128), Mat2, Mat2) {
    let mut a = *m;
    let mut u: Mat2 = [[1, 0], [0, 1]];
    let mut v: Mat2 = [[1, 0], [0, 1]];

    // Row/column Euclid until off-diagonal entries vanish.
    loop {
        // Clear a[1][0] with row operations.
        while a[1][0] != 0 {
            if a[0][0] == 0 || (a[0][0] != 0 && a[1][0] % a[0][0] != 0 && a[0][0].abs() > a[1][0].abs()) {
                a.swap(0, 1);
                u.swap(0, 1);
            }
            if a[0][0] != 0 {
                let q = a[1][0].div_euclid(a[0][0]);
                for j in 0..2 {
                    a[1][j] -= q * a[0][j];
                    u[1][j] -= q * u[0][j];
                }
                if a[1][0] != 0 {
                    a.swap(0, 1);
                    u.swap(0, 1);
                }
            }
        }
        // Clear a[0][1] with column operations (may disturb a[1][0]).
        while a[0][1] != 0 {
            if a[0][0] == 0 || (a[0][1] % a[0][0] != 0 && a[0][0].abs() > a[0][1].abs()) {
                for row in a.iter_mut() {
                    row.swap(0, 1);
                }
                for row in v.iter_mut() {
                    row.swap(0, 1);
                }
            }
            if a[0][0] != 0 {
                let q = a[0][1].div_euclid(a[0][0]);
                for i in 0..2 {
                    a[i][1] -= q * a[i][0];
                    v[i][1] -= q * v[i][0];
                }
                if a[0][1] != 0 {
                    for row in a.iter_mut() {
                        row.swap(0, 1);
                    }
                    for row in v.iter_mut() {
                        row.swap(0, 1);
                    }
                }
            }
        }
        if a[1][0] == 0 && a[0][1] == 0 {
            break;
        }
    }

    // Enforce the divisibility d0 | d1 (merge trick, then re-diagonalize).
    if a[0][0] != 0 && a[1][1] % a[0][0] != 0 {
        // Add column 1 to column 0, putting a[1][1] back in play.
        for i in 0..2 {
            a[i][0] += a[i][1];
            v[i][0] += v[i][1];
        }
        let ((d0, d1), u2, v2) = smith(&a);
        return ((d0, d1), mat_mul(&u2, &u), mat_mul(&v, &v2));
    }

    // Normalize signs.
    for i in 0..2 {
        if a[i][i] < 0 {
            for j in 0..2 {
                a[i][j] = -a[i][j];
                u[i][j] = -u[i][j];
            }
        }
    }
    // Order: zero diagonal entries (rank-deficient input) sort last; both of
    // our call sites have full rank, but keep the general contract d0 | d1.
    if a[1][1] != 0 && (a[0][0] == 0 || a[0][0] > a[1][1]) {
        // Only possible when one entry is zero; swap rows and columns.
        a.swap(0, 1);
        u.swap(0, 1);
        for row in a.iter_mut() {
            row.swap(0, 1);
        }
        for row in v.iter_mut() {
            row.swap(0, 1);
        }
    }
    ((a[0][0], a[1][1]), u, v)
}
