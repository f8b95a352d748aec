//! Exact integer sequences: Fibonacci, k-generalized Fibonacci and Padovan.
//!
//! Every value is a [`BigCount`] computed by forward iteration with
//! overflow-checked 128-bit arithmetic. Indices outside the range where a
//! sequence is defined are rejected instead of being read as zero.

use thiserror::Error;

/// Exact nonnegative count. All arithmetic on it is checked.
pub type BigCount = u128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("{sequence} is not defined at index {index} (domain starts at {min})")]
    OutOfDomain {
        sequence: &'static str,
        index: i64,
        min: i64,
    },
    #[error("k-generalized Fibonacci needs k >= 2, got k = {0}")]
    InvalidOrder(u32),
    #[error("{0} overflows 128-bit arithmetic; use a smaller index")]
    Overflow(&'static str),
}

pub(crate) fn add(a: BigCount, b: BigCount, what: &'static str) -> Result<BigCount, SeqError> {
    a.checked_add(b).ok_or(SeqError::Overflow(what))
}

/// `F_n` with `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(n: u32) -> Result<BigCount, SeqError> {
    if n == 0 {
        return Ok(0);
    }
    let (mut a, mut b): (BigCount, BigCount) = (0, 1);
    for _ in 1..n {
        let next = add(a, b, "fibonacci")?;
        a = b;
        b = next;
    }
    Ok(b)
}

/// `F^(k)_n`: each term is the sum of the previous `k`, seeded with
/// `F^(k)_1 = 1` and zeros on `[-k+2, 0]`.
pub fn fibonacci_k(k: u32, n: i64) -> Result<BigCount, SeqError> {
    if k < 2 {
        return Err(SeqError::InvalidOrder(k));
    }
    let min = 2 - i64::from(k);
    if n < min {
        return Err(SeqError::OutOfDomain {
            sequence: "k-generalized Fibonacci",
            index: n,
            min,
        });
    }
    if n <= 0 {
        return Ok(0);
    }
    // Sliding window over the last k terms, oldest at `head`.
    let k = k as usize;
    let mut window: Vec<BigCount> = vec![0; k];
    window[k - 1] = 1;
    let mut head = 0;
    let mut sum: BigCount = 1;
    for step in 1..n {
        let next = sum;
        let oldest = std::mem::replace(&mut window[head], next);
        head = (head + 1) % k;
        if step + 1 < n {
            sum = add(sum - oldest, next, "k-generalized Fibonacci")?;
        }
    }
    Ok(window[(head + k - 1) % k])
}

/// `P_n` with `P_{-3} = 1`, `P_{-2} = P_{-1} = 0`, `P_n = P_{n-2} + P_{n-3}`.
pub fn padovan(n: i64) -> Result<BigCount, SeqError> {
    if n < -3 {
        return Err(SeqError::OutOfDomain {
            sequence: "Padovan",
            index: n,
            min: -3,
        });
    }
    // (P_{i}, P_{i+1}, P_{i+2}) starting at i = -3
    let (mut a, mut b, mut c): (BigCount, BigCount, BigCount) = (1, 0, 0);
    for _ in -3..n {
        let next = add(a, b, "Padovan")?;
        a = b;
        b = c;
        c = next;
    }
    Ok(a)
}

/// Left-hand side of the Padovan/Fibonacci identity, summed term by term:
/// `sum_{n=-3}^{g-3} P_n * F_{g-2-n}`.
///
/// Equals `F_{g+2} - P_{g+1}` for every `g >= 0`.
pub fn padovan_fibonacci_convolution(g: u32) -> Result<BigCount, SeqError> {
    // P_{-3..=g-3} and F_{1..=g+1}, both of length g + 1.
    let len = g as usize + 1;
    let pad = padovan_prefix(len)?;
    let fib = fibonacci_prefix(len + 1)?;
    let mut total: BigCount = 0;
    for (offset, p) in pad.iter().enumerate() {
        // n = offset - 3, so g - 2 - n = g + 1 - offset
        let f = fib[len - offset];
        let term = p
            .checked_mul(f)
            .ok_or(SeqError::Overflow("Padovan-Fibonacci convolution"))?;
        total = add(total, term, "Padovan-Fibonacci convolution")?;
    }
    Ok(total)
}

/// `P_{-3}, P_{-2}, ...`, `len` terms.
fn padovan_prefix(len: usize) -> Result<Vec<BigCount>, SeqError> {
    let mut out: Vec<BigCount> = Vec::with_capacity(len.max(3));
    out.extend([1, 0, 0]);
    while out.len() < len {
        let i = out.len();
        out.push(add(out[i - 2], out[i - 3], "Padovan")?);
    }
    out.truncate(len);
    Ok(out)
}

/// `F_0, F_1, ...`, `len` terms.
fn fibonacci_prefix(len: usize) -> Result<Vec<BigCount>, SeqError> {
    let mut out: Vec<BigCount> = Vec::with_capacity(len.max(2));
    out.extend([0, 1]);
    while out.len() < len {
        let i = out.len();
        out.push(add(out[i - 1], out[i - 2], "fibonacci")?);
    }
    out.truncate(len);
    Ok(out)
}
