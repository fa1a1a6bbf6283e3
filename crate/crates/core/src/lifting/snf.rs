//! Smith normal form over the integers.

/// `P · A · Q = D` with `P`, `Q` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<i128>,
    pub p: Vec<Vec<i128>>,
    pub q: Vec<Vec<i128>>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d != 0).count()
    }

    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<i128> {
        self.diag.iter().copied().filter(|&d| d != 0).collect()
    }

    /// Some integer solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[i128]) -> Option<Vec<i128>> {
        let pb: Vec<i128> = self.p.iter().map(|row| dot(row, b)).collect();
        let mut y = vec![0i128; self.cols];
        for (i, &v) in pb.iter().enumerate() {
            let d = self.diag.get(i).copied().unwrap_or(0);
            if d == 0 {
                if v != 0 {
                    return None;
                }
            } else {
                if v % d != 0 {
                    return None;
                }
                y[i] = v / d;
            }
        }
        Some(self.q.iter().map(|row| dot(row, &y)).collect())
    }
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn smith_normal_form(a: &[Vec<i128>], cols: usize) -> Smith {
    let rows = a.len();
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut p = identity(rows);
    let mut q = identity(cols);

    let swap_rows = |m: &mut Vec<Vec<i128>>, p: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        m.swap(i, j);
        p.swap(i, j);
    };
    let swap_cols = |m: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        for row in q.iter_mut() {
            row.swap(i, j);
        }
    };
    // row_i -= f · row_j
    let row_op = |m: &mut Vec<Vec<i128>>, p: &mut Vec<Vec<i128>>, i: usize, j: usize, f: i128| {
        for k in 0..m[0].len() {
            let v = m[j][k];
            m[i][k] -= f * v;
        }
        for k in 0..p[0].len() {
            let v = p[j][k];
            p[i][k] -= f * v;
        }
    };
    // col_i -= f · col_j
    let col_op = |m: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, i: usize, j: usize, f: i128| {
        for row in m.iter_mut() {
            let v = row[j];
            row[i] -= f * v;
        }
        for row in q.iter_mut() {
            let v = row[j];
            row[i] -= f * v;
        }
    };

    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                let diag = (0..steps).map(|k| m[k][k]).collect();
                return Smith { rows, cols, diag, p, q };
            };
            swap_rows(&mut m, &mut p, t, bi);
            swap_cols(&mut m, &mut q, t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                let f = m[i][t].div_euclid(m[t][t]);
                row_op(&mut m, &mut p, i, t, f);
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let f = m[t][j].div_euclid(m[t][t]);
                col_op(&mut m, &mut q, j, t, f);
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % m[t][t] != 0));
            match bad {
                Some(i) => row_op(&mut m, &mut p, t, i, -1),
                None => break,
            }
        }
        if m[t][t] < 0 {
            for v in m[t].iter_mut() {
                *v = -*v;
            }
            for v in p[t].iter_mut() {
                *v = -*v;
            }
        }
    }
    let diag = (0..steps).map(|k| m[k][k]).collect();
    Smith { rows, cols, diag, p, q }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let k = b.len();
        let c = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| (0..c).map(|j| (0..k).map(|t| row[t] * b[t][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn textbook_example() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&a, 3);
        assert_eq!(s.diag, vec![2, 6, 12]);
        let d = mat_mul(&mat_mul(&s.p, &a), &s.q);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
            }
        }
    }

    #[test]
    fn solves_and_detects_unsolvable() {
        let a = vec![vec![2, 0], vec![0, 3]];
        let s = smith_normal_form(&a, 2);
        assert_eq!(s.solve(&[4, 9]), Some(vec![2, 3]));
        assert_eq!(s.solve(&[1, 0]), None);
        // 2x = 1 has no integer solution; 2x = 4 does
        let s = smith_normal_form(&[vec![2]], 1);
        assert_eq!(s.solve(&[1]), None);
        assert_eq!(s.solve(&[4]), Some(vec![2]));
    }

    #[test]
    fn zero_and_rectangular() {
        let s = smith_normal_form(&[vec![0, 0, 0]], 3);
        assert_eq!(s.rank(), 0);
        assert_eq!(s.solve(&[0]).unwrap().len(), 3);
        assert_eq!(s.solve(&[1]), None);
        let a = vec![vec![1, 2, 3], vec![4, 5, 6]];
        let s = smith_normal_form(&a, 3);
        assert_eq!(s.invariant_factors(), vec![1, 3]);
        let x = s.solve(&[6, 15]).unwrap();
        assert_eq!(mat_mul(&a, &x.iter().map(|&v| vec![v]).collect::<Vec<_>>()), vec![vec![6], vec![15]]);
    }
}
