//! Printed values that the pipeline is checked against. Indexed by k − 1
//! where a table runs over k = 1..=16.

/// Σ_k(1.15, 1) rounded up at 8 decimals.
pub const B_EPS_015: [f64; 16] = [
    0.23445352, 0.06869804, 0.02783858, 0.01427867, 0.0085573, 0.00568194, 0.00404715, 0.00303134,
    0.00235718, 0.00188669, 0.00154513, 0.00128917, 0.0010924, 0.00093759, 0.00081374, 0.00071303,
];

/// Σ_k(1.01, 1) rounded up at 8 decimals.
pub const B_EPS_001: [f64; 16] = [
    0.10919579, 0.03040152, 0.00958566, 0.00384196, 0.00185609, 0.00102853, 0.00063099, 0.00041809,
    0.00029396, 0.00021655, 0.00016557, 0.00013046, 0.00010535, 0.00008684, 0.00007282, 0.00006196,
];

/// (𝒮₁, 𝒮₂, 𝒮) at ε = 0.15.
pub const S_015: [[f64; 3]; 16] = [
    [0.3784516540, 0.3249009026, 0.3249009026],
    [0.3839873212, 0.3763572015, 0.3763572015],
    [0.4018562060, 0.4004551145, 0.4004551145],
    [0.4238223974, 0.4236306767, 0.4236306767],
    [0.4467597648, 0.4468482525, 0.4467597648],
    [0.4693610537, 0.4695098183, 0.4693610537],
    [0.4910902618, 0.4912403488, 0.4910902618],
    [0.5117562107, 0.5118920810, 0.5117562107],
    [0.5313238925, 0.5314428586, 0.5313238925],
    [0.5498280118, 0.5499312088, 0.5498280118],
    [0.5673323540, 0.5674218683, 0.5673323540],
    [0.5839104248, 0.5839883668, 0.5839104248],
    [0.5996362678, 0.5997044990, 0.5996362678],
    [0.6145802698, 0.6146403531, 0.6145802698],
    [0.6288074426, 0.6288606647, 0.6288074426],
    [0.6423769295, 0.6424243440, 0.6423769295],
];

pub const D_EPS0_001: f64 = -0.2500763736;
pub const ALPHA_015_UPPER: f64 = 0.021467;

pub const M_CONSTANT: f64 = 0.1021253857;
/// (√a₁ − √a₀)² for the embedded polynomial, evaluated at 50 digits.
pub const M_CLOSED_FORM: f64 = 0.102_125_385_783_304_087_718_936_235_4;
/// (C₁, C₂, C₃, C₄) at ε = 0.15.
pub const C_RATIOS_015: [f64; 4] = [12.24106100, 9.534650638, 0.444485082, 5.123026304];
/// (C₁, C₂, C₃, C₄) at ε = 0.01.
pub const C_RATIOS_001: [f64; 4] = [12.24106100, 9.534650638, 0.050168175, 2.269182727];
/// The ε = 0.01 ratios rounded up for the stated zero-free region.
pub const C_ROUNDED: [f64; 4] = [12.2411, 9.5347, 0.05017, 2.2692];

/// Stationary points t_k(ε) as (k, ε, t).
pub const T_STAR: [(usize, f64, f64); 4] = [
    (1, 0.15, 3.2308),
    (2, 0.15, 1.6154),
    (3, 0.15, 1.0769),
    (3, 0.01, 1.0),
];

/// One low-height case: split, region A optimum, region B and C optima, R.
#[derive(Debug, Clone, Copy)]
pub struct ExceptionalCase {
    pub d1: f64,
    pub d2: f64,
    pub r_a: f64,
    pub inv_a: f64,
    pub r_b: f64,
    pub inv_b: f64,
    pub r_c: f64,
    pub inv_c: f64,
    pub big_r: f64,
}

pub const EXCEPTIONAL_CASES: [ExceptionalCase; 2] = [
    ExceptionalCase {
        d1: 1.021,
        d2: 2.374,
        r_a: 2.1426,
        inv_a: 12.5494,
        r_b: 0.2366,
        inv_b: 12.43922,
        r_c: 0.2477,
        inv_c: 12.42548,
        big_r: 12.5494,
    },
    ExceptionalCase {
        d1: 1.0015,
        d2: 2.318,
        r_a: 2.1163,
        inv_a: 9.7946,
        r_b: 0.2363,
        inv_b: 12.43355,
        r_c: 0.2473,
        inv_c: 12.43436,
        big_r: 12.43436,
    },
];
