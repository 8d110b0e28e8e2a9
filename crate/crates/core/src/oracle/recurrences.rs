use crate::error::{invalid, Result};

/// Denominator used when one more edge is paired: the number of free
/// points, counted with or without the point the walk is departing from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Denominator {
    /// `3n - 2t + 1`
    PlusOne,
    /// `3n - 2t - 1`; the step from `t = 0` then uses `3n - 1`.
    MinusOne,
}

impl Denominator {
    fn at(self, n: usize, t: usize) -> f64 {
        let base = 3.0 * n as f64 - 2.0 * t as f64;
        match self {
            Denominator::PlusOne => base + 1.0,
            Denominator::MinusOne => base - 1.0,
        }
    }
}

/// Mean-field values of `E[X_i(t)]` for cubic graphs, `t = 0..=3n/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable {
    pub n: usize,
    pub denominator: Denominator,
    /// `x[t] = [E X_0, E X_1, E X_2, E X_3]` at time `t`.
    pub x: Vec<[f64; 4]>,
}

impl RecurrenceTable {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn at(&self, t: usize) -> Option<[f64; 4]> {
        self.x.get(t).copied()
    }

    /// `n ((3n - 2t) / 3n)^(3/2)`.
    pub fn closed_x3(&self, t: usize) -> f64 {
        closed_x3(self.n, t)
    }

    /// `(3n - 2t) (1 - (1 - 2t/3n)^(1/2))`.
    pub fn closed_x1(&self, t: usize) -> f64 {
        closed_x1(self.n, t)
    }
}

pub fn closed_x3(n: usize, t: usize) -> f64 {
    let n = n as f64;
    n * ((3.0 * n - 2.0 * t as f64) / (3.0 * n)).powf(1.5)
}

pub fn closed_x1(n: usize, t: usize) -> f64 {
    let nf = n as f64;
    let free = 3.0 * nf - 2.0 * t as f64;
    free * (1.0 - (1.0 - 2.0 * t as f64 / (3.0 * nf)).sqrt())
}

/// Iterates the conditional-expectation recurrences with each `X_i`
/// replaced by its mean:
///
/// ```text
/// X3' = X3 - 3 X3 / D
/// X2' = X2 + [t = 0] - 2 X2 / D
/// X1' = X1 - 2 X1 / D + 3 X3 / D + 2 X2 / D
/// X0' = n - X1' - X2' - X3'
/// ```
///
/// The recurrences are linear, so this is the exact expectation of the
/// linear model.
pub fn solve_recurrences(n: usize, d: usize, denominator: Denominator) -> Result<RecurrenceTable> {
    if d != 3 {
        return invalid("recurrences are stated for d = 3");
    }
    if n < 2 || n % 2 == 1 {
        return invalid("n must be even and at least 2");
    }
    let steps = 3 * n / 2;
    let mut x = Vec::with_capacity(steps + 1);
    let mut cur = [0.0, 0.0, 0.0, n as f64];
    x.push(cur);
    for t in 0..steps {
        let den = denominator.at(n, t);
        let [_, x1, x2, x3] = cur;
        let first = if t == 0 { 1.0 } else { 0.0 };
        let (n1, n2, n3) = if den > 0.0 {
            (
                x1 - 2.0 * x1 / den + 3.0 * x3 / den + 2.0 * x2 / den,
                x2 + first - 2.0 * x2 / den,
                x3 - 3.0 * x3 / den,
            )
        } else {
            (x1, x2, x3)
        };
        cur = [n as f64 - n1 - n2 - n3, n1, n2, n3];
        x.push(cur);
    }
    Ok(RecurrenceTable { n, denominator, x })
}
