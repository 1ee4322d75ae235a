//! Radix-2 FFT used for linear convolution of probability masses.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

// Below this many multiply-adds the direct sum is cheaper.
const DIRECT_LIMIT: usize = 1 << 16;

fn transform(re: &mut [f64], im: &mut [f64], inverse: bool) {
    let n = re.len();
    debug_assert!(n.is_power_of_two());
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            re.swap(i, j);
            im.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let step = sign * 2.0 * PI / len as f64;
        // Twiddles computed directly rather than by recurrence.
        let twiddles: Vec<(f64, f64)> = (0..half)
            .map(|k| {
                let angle = step * k as f64;
                (libm::cos(angle), libm::sin(angle))
            })
            .collect();
        for start in (0..n).step_by(len) {
            for (k, &(wr, wi)) in twiddles.iter().enumerate() {
                let a = start + k;
                let b = a + half;
                let tr = re[b] * wr - im[b] * wi;
                let ti = re[b] * wi + im[b] * wr;
                re[b] = re[a] - tr;
                im[b] = im[a] - ti;
                re[a] += tr;
                im[a] += ti;
            }
        }
        len <<= 1;
    }
}

/// Full linear convolution of two non-negative sequences, truncated to
/// `max_len` entries. Round-off negatives are clamped to zero.
pub(crate) fn convolve(a: &[f64], b: &[f64], max_len: usize) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = (a.len() + b.len() - 1).min(max_len);
    if a.len().saturating_mul(b.len()) <= DIRECT_LIMIT {
        let mut out = vec![0.0; out_len];
        for (i, &x) in a.iter().enumerate().take(out_len) {
            for (o, &y) in out[i..].iter_mut().zip(b) {
                *o += x * y;
            }
        }
        return out;
    }
    let n = (a.len() + b.len() - 1).next_power_of_two();
    // Pack both real inputs into one complex transform: z = a + i·b.
    let mut re = vec![0.0; n];
    let mut im = vec![0.0; n];
    re[..a.len()].copy_from_slice(a);
    im[..b.len()].copy_from_slice(b);
    transform(&mut re, &mut im, false);
    // A_k·B_k = (Z_k² − conj(Z_{−k})²) / (4i)
    let mut pr = vec![0.0; n];
    let mut pi = vec![0.0; n];
    for k in 0..n {
        let m = (n - k) & (n - 1);
        let (zr, zi) = (re[k], im[k]);
        let (cr, ci) = (re[m], -im[m]);
        let sr = zr * zr - zi * zi - (cr * cr - ci * ci);
        let si = 2.0 * zr * zi - 2.0 * cr * ci;
        // divide by 4i
        pr[k] = si / 4.0;
        pi[k] = -sr / 4.0;
    }
    transform(&mut pr, &mut pi, true);
    let scale = 1.0 / n as f64;
    pr.truncate(out_len);
    for v in &mut pr {
        *v = (*v * scale).max(0.0);
    }
    pr
}
