//! Allocation of the budget `k` across independent cells.

/// `t[i][k']`: best total using the first `i` rows and at most `k'` points;
/// `choice[i][k']`: the share of row `i` realizing it.
#[derive(Debug, Clone, PartialEq)]
pub struct CombineTable {
    t: Vec<Vec<f64>>,
    choice: Vec<Vec<usize>>,
}

impl CombineTable {
    pub fn table(&self) -> &[Vec<f64>] {
        &self.t
    }

    /// `T[m][k]`.
    pub fn value(&self) -> f64 {
        *self.t.last().and_then(|r| r.last()).unwrap_or(&0.0)
    }

    /// Per-row budgets `k_i` realizing [`Self::value`].
    pub fn allocation(&self) -> Vec<usize> {
        let m = self.t.len() - 1;
        let mut budget = self.t[0].len() - 1;
        let mut alloc = vec![0; m];
        for i in (1..=m).rev() {
            let kappa = self.choice[i][budget];
            alloc[i - 1] = kappa;
            budget -= kappa;
        }
        alloc
    }
}

/// Fills `T[i][k'] = max_kappa H[i][kappa] + T[i-1][k'-kappa]` with `kappa`
/// ranging over the row's length. Ties keep the smallest `kappa`.
pub fn combine_dp<R: AsRef<[f64]>>(rows: &[R], k: usize) -> CombineTable {
    let m = rows.len();
    let mut t = vec![vec![0.0; k + 1]; m + 1];
    let mut choice = vec![vec![0usize; k + 1]; m + 1];
    for i in 1..=m {
        let h = rows[i - 1].as_ref();
        let (prev, cur) = t.split_at_mut(i);
        let (prev, cur) = (&prev[i - 1], &mut cur[0]);
        for (kappa, &hv) in h.iter().enumerate().take(k + 1) {
            for kk in kappa..=k {
                let cand = hv + prev[kk - kappa];
                if cand > cur[kk] {
                    cur[kk] = cand;
                    choice[i][kk] = kappa;
                }
            }
        }
    }
    CombineTable { t, choice }
}
