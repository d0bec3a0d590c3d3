use super::LaurentPoly;
use crate::error::{Error, Result};

fn check_r(r: u64) -> Result<u32> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r must be at least 2, got {r}")));
    }
    u32::try_from(r).map_err(|_| Error::InvalidParameter(format!("r = {r} is too large")))
}

/// Runs `next = (mid^r + bump(k)) / prev` from the seeds `(X1, X2)` until index `m`,
/// stepping forward for `m > 2` and backward for `m < 1`.
fn iterate<F>(r: u64, m: i64, nvars: usize, mut bump: F) -> Result<LaurentPoly>
where
    F: FnMut(i64) -> LaurentPoly,
{
    let e = check_r(r)?;
    let (x1, x2) = (LaurentPoly::var(nvars, 0), LaurentPoly::var(nvars, 1));
    match m {
        1 => Ok(x1),
        2 => Ok(x2),
        _ if m > 2 => {
            let (mut prev, mut cur) = (x1, x2);
            for k in 2..m {
                let next = cur.checked_pow(e)?.checked_add(&bump(k - 1))?.exact_div(&prev)?;
                prev = std::mem::replace(&mut cur, next);
            }
            Ok(cur)
        }
        _ => {
            let (mut next, mut cur) = (x2, x1);
            for k in (m + 1..=1).rev() {
                let prev = cur.checked_pow(e)?.checked_add(&bump(k - 1))?.exact_div(&next)?;
                next = std::mem::replace(&mut cur, prev);
            }
            Ok(cur)
        }
    }
}

/// `X_m` from `X_{k+1} X_{k-1} = X_k^r + 1` with `X_1, X_2` the initial variables.
pub fn cluster_recurrence(r: u64, m: i64) -> Result<LaurentPoly> {
    iterate(r, m, 2, |_| LaurentPoly::one(2))
}

/// Exponents `(a, b)` of `Ỹ_m = Y1^a Y2^b`: `Ỹ_1 = Y1`, `Ỹ_2 = Y1^r Y2`, `Ỹ_{k+1} Ỹ_{k-1} = Ỹ_k^r`.
pub fn coefficient_y_exponents(r: u64, m: i64) -> Result<[i64; 2]> {
    let r = check_r(r)? as i64;
    let step = |a: [i64; 2], b: [i64; 2]| -> Result<[i64; 2]> {
        let f = |i: usize| {
            r.checked_mul(a[i])
                .and_then(|v| v.checked_sub(b[i]))
                .ok_or(Error::Overflow("coefficient exponent"))
        };
        Ok([f(0)?, f(1)?])
    };
    let (y1, y2) = ([1, 0], [r, 1]);
    match m {
        1 => Ok(y1),
        2 => Ok(y2),
        _ if m > 2 => {
            let (mut prev, mut cur) = (y1, y2);
            for _ in 2..m {
                let next = step(cur, prev)?;
                prev = std::mem::replace(&mut cur, next);
            }
            Ok(cur)
        }
        _ => {
            let (mut next, mut cur) = (y2, y1);
            for _ in m..1 {
                let prev = step(cur, next)?;
                next = std::mem::replace(&mut cur, prev);
            }
            Ok(cur)
        }
    }
}

/// `(X̃_m, Ỹ_m)` with `X̃_{k+1} X̃_{k-1} = X̃_k^r + Ỹ_{k-1}`, in variables `X1, X2, Y1, Y2`.
pub fn coefficient_recurrence(r: u64, m: i64) -> Result<(LaurentPoly, LaurentPoly)> {
    let mut failure = None;
    let x = iterate(r, m, 4, |k| match coefficient_y_exponents(r, k) {
        Ok([a, b]) => LaurentPoly::monomial(4, &[0, 0, a, b], 1),
        Err(e) => {
            failure = Some(e);
            LaurentPoly::zero(4)
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let [a, b] = coefficient_y_exponents(r, m)?;
    Ok((x, LaurentPoly::monomial(4, &[0, 0, a, b], 1)))
}

/// `X_m` evaluated at `X1 = X2 = 1`, by the integer recurrence.
pub fn cluster_value_at_ones(r: u64, m: i64) -> Result<u128> {
    let e = check_r(r)?;
    let steps = if m >= 1 { (m - 2).max(0) } else { 1 - m };
    let (mut prev, mut cur) = (1u128, 1u128);
    for _ in 1..=steps {
        let top = cur
            .checked_pow(e)
            .and_then(|v| v.checked_add(1))
            .ok_or(Error::Overflow("cluster value"))?;
        if top % prev != 0 {
            return Err(Error::NotDivisible);
        }
        prev = std::mem::replace(&mut cur, top / prev);
    }
    Ok(cur)
}
