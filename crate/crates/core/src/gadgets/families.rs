//! Clause families with explicit matrix encodings.

use crate::error::{Error, Result};

use super::matrix::GadgetMatrix;

type Pattern = [[u8; 2]; 2];

const I: Pattern = [[1, 0], [0, 1]];
const I_T: Pattern = [[0, 0], [0, 1]];
const I_F: Pattern = [[1, 0], [0, 0]];
const J_FT: Pattern = [[0, 1], [0, 0]];
const J_TF: Pattern = [[0, 0], [1, 0]];
const ONES: Pattern = [[1, 1], [1, 1]];
const SWAP: Pattern = [[0, 1], [1, 0]];
const TOP: Pattern = [[1, 1], [0, 0]];

/// OR of `k` literals; `4k - 3` ones. The first literal is distinguished.
pub fn sat_clause(k: usize) -> Result<GadgetMatrix> {
    let mut g = GadgetMatrix::new(k)?;
    // `+` is the odd index 2i-1, `-` the even index 2i
    for i in 1..=k {
        g.set(2 * i, 2 * i, true);
        if i != 1 {
            g.set(2 * i - 1, 2 * i - 1, true);
            g.set(1, 2 * i, true);
            g.set(2 * i, 1, true);
        }
    }
    Ok(g)
}

/// Not-all-equal over `k >= 2` literals; `6k - 8` ones. The first and last
/// literals are distinguished.
pub fn nae_clause(k: usize) -> Result<GadgetMatrix> {
    if k < 2 {
        return Err(Error::Parameter(format!(
            "NAE clauses need at least 2 literals, got {k}"
        )));
    }
    let mut g = GadgetMatrix::new(k)?;
    for i in 1..=k {
        if i != k {
            g.set(2 * i, 2 * i, true);
            g.set(2 * i - 1, 2 * k, true);
            g.set(2 * k, 2 * i - 1, true);
        }
        if i != 1 {
            g.set(2 * i - 1, 2 * i - 1, true);
            g.set(1, 2 * i, true);
            g.set(2 * i, 1, true);
        }
    }
    Ok(g)
}

/// False exactly on `(F..F)` and on `(F..F T..T)` with `h` trailing trues.
///
/// `4k + 2h - 5` ones for `h < k`; `h = k` is the NAE clause.
pub fn two_false(k: usize, h: usize) -> Result<GadgetMatrix> {
    if h < 1 || h > k {
        return Err(Error::Parameter(format!(
            "2-false clauses need 1 <= h <= k, got k = {k}, h = {h}"
        )));
    }
    if h == k {
        return nae_clause(k);
    }
    let mut g = GadgetMatrix::new(k)?;
    g.set_block(1, 1, I_T);
    for j in 2..=k {
        g.set_block(1, j, J_FT);
    }
    let tail = k - h + 1;
    for i in 2..=k {
        g.set_block(i, i, I);
        if i < tail {
            g.set_block(i, 1, J_TF);
        } else {
            g.set_block(i, 1, I_F);
            if i > tail {
                g.set_block(i, i - 1, J_TF);
            }
            if i < k {
                g.set_block(i, i + 1, J_TF);
            }
        }
    }
    Ok(g)
}

/// True iff the number of true literals lies in `hmin..=hmax`.
pub fn range_t(k: usize, hmin: usize, hmax: usize) -> Result<GadgetMatrix> {
    if hmin > hmax || hmax > k {
        return Err(Error::Parameter(format!(
            "range needs 0 <= hmin <= hmax <= k, got k = {k}, [{hmin}, {hmax}]"
        )));
    }
    let mut g = GadgetMatrix::new(k)?;
    let h1 = hmin;
    let h3 = k - hmax;
    let group = |i: usize| {
        if i <= h1 {
            0
        } else if i <= k - h3 {
            1
        } else {
            2
        }
    };
    for i in 1..=k {
        for j in 1..=k {
            let (gi, gj) = (group(i), group(j));
            if i == j {
                g.set_block(i, i, [I_T, I, I_F][gi]);
            } else if gi < gj {
                g.set_block(i, j, J_FT);
            } else if gi > gj {
                g.set_block(i, j, J_TF);
            }
        }
    }
    Ok(g)
}

/// True iff the binary number `u1..uk` (most significant first) is `<= q`.
///
/// The matrix has `5k - 4 + 2 (q_1 + .. + q_{k-1}) + q_k` ones.
pub fn binary_threshold(k: usize, q: u64) -> Result<GadgetMatrix> {
    let mut g = GadgetMatrix::new(k)?;
    if q >> k != 0 {
        return Err(Error::Parameter(format!(
            "threshold {q} does not fit in {k} binary digits"
        )));
    }
    let digit = |i: usize| q >> (k - i) & 1 == 1;
    for i in 1..=k {
        if i < k {
            g.set_block(i, i, if digit(i) { I_T } else { I_F });
            if digit(i) {
                g.set_block(i, k, TOP);
            }
        } else {
            g.set_block(k, k, if digit(k) { I } else { I_F });
        }
        if i > 1 {
            g.set_block(i, i - 1, ONES);
        }
    }
    Ok(g)
}

/// Over `k = 2h` literals: true iff the numbers read from `u1..uh` and from
/// `u(h+1)..u(2h)` differ. `7k - 8` ones.
pub fn binary_distinct(h: usize) -> Result<GadgetMatrix> {
    if h < 1 {
        return Err(Error::Parameter("binary distinct needs h >= 1".into()));
    }
    let k = 2 * h;
    let mut g = GadgetMatrix::new(k)?;
    for i in 1..=h {
        if i > 1 {
            g.set_block(i, i, I);
        }
        if i < h {
            g.set_block(i, i + 1, ONES);
            g.set_block(h + i, h + i, I);
            g.set_block(h + i, h + i + 1, ONES);
        }
        g.set_block(i, h + i, SWAP);
    }
    g.set_block(k, 1, ONES);
    Ok(g)
}
