//! Published optima used as verification targets.

/// `T_D` for `K = 1..=5` (rows) and `D = 1..=6` (columns), to 6 significant digits.
pub const PUBLISHED_GRID: [[f64; 6]; 5] = [
    [1.86793, 2.76625, 3.68995, 4.63206, 5.58735, 6.55223],
    [1.82562, 2.67843, 3.55933, 4.46334, 5.38554, 6.32193],
    [1.81819, 2.66198, 3.53322, 4.42759, 5.34059, 6.26840],
    [1.81707, 2.65939, 3.52893, 4.42148, 5.33263, 6.25862],
    [1.81692, 2.65908, 3.52836, 4.42064, 5.33149, 6.25720],
];

/// `T_D` for `K = 1`, `D = 1..=18`, at full plotted precision.
pub const PUBLISHED_K1_CURVE: [f64; 18] = [
    1.8679291102114184,
    2.7662504942190176,
    3.6899390889963155,
    4.632054318702819,
    5.5873596338697835,
    6.55222537443972,
    7.524152471011434,
    8.501400896330647,
    9.482736621759516,
    10.467266858165571,
    11.454333012714129,
    12.443440344113888,
    13.43421095829736,
    14.426351815325729,
    15.419632547557956,
    16.41386980382098,
    17.408916012469916,
    18.404651188768383,
];

/// Optimal `K = 1` parameters for one `D`, as published (rounded).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedBlock {
    pub d: usize,
    /// `T_1, ..., T_D`.
    pub t: &'static [f64],
    pub x: f64,
    pub x11: f64,
    pub x12: f64,
    /// `alpha_{1,1}, ..., alpha_{1,D}`.
    pub alpha: &'static [f64],
}

pub const PUBLISHED_K1_PARAMETERS: [PublishedBlock; 6] = [
    PublishedBlock { d: 1, t: &[1.86793], x: 0.464808, x11: 6.0606, x12: 0.104715, alpha: &[0.317317] },
    PublishedBlock {
        d: 2,
        t: &[1.87788, 2.76626],
        x: 0.595073,
        x11: 5.74769,
        x12: 0.12725,
        alpha: &[0.314447, 0.337219],
    },
    PublishedBlock {
        d: 3,
        t: &[1.89454, 2.77944, 3.68995],
        x: 0.684299,
        x11: 5.41613,
        x12: 0.146775,
        alpha: &[0.310059, 0.336865, 0.351627],
    },
    PublishedBlock {
        d: 4,
        t: &[1.91039, 2.80346, 3.7035, 4.63207],
        x: 0.747046,
        x11: 5.11625,
        x12: 0.163892,
        alpha: &[0.306472, 0.335557, 0.351929, 0.362866],
    },
    PublishedBlock {
        d: 5,
        t: &[1.92386, 2.828, 3.72975, 4.64486, 5.58737],
        x: 0.792588,
        x11: 4.8582,
        x12: 0.178964,
        alpha: &[0.304026, 0.334429, 0.351624, 0.36331, 0.371992],
    },
    PublishedBlock {
        d: 6,
        t: &[1.93495, 2.85009, 3.75806, 4.6709, 5.600, 6.55224],
        x: 0.826544,
        x11: 4.63595,
        x12: 0.192435,
        alpha: &[0.302631, 0.333786, 0.351339, 0.363364, 0.372425, 0.379599],
    },
];

/// Published grid entry for `(D, K)`, if tabulated.
pub fn published_t(d: usize, k: usize) -> Option<f64> {
    if (1..=6).contains(&d) && (1..=5).contains(&k) {
        Some(PUBLISHED_GRID[k - 1][d - 1])
    } else {
        None
    }
}

/// Published `K = 1` curve value for `D`, if plotted.
pub fn published_k1(d: usize) -> Option<f64> {
    (1..=18).contains(&d).then(|| PUBLISHED_K1_CURVE[d - 1])
}

pub fn published_block(d: usize) -> Option<&'static PublishedBlock> {
    PUBLISHED_K1_PARAMETERS.iter().find(|b| b.d == d)
}
