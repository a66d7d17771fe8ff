#![allow(clippy::excessive_precision)] // table digits are kept exactly as published

//! Published reference values the `reproduce` command checks against.
//!
//! Each entry lists the parameters, the expected solutions and the
//! comparison tolerance. Full rows carry all five metric coefficients in the
//! `x3 = 1` normalisation; planar rows carry `(x1, x2)` only. The
//! large-parameter rows are compared relatively, the rest absolutely.

/// A space expected to have exactly these solutions, each given by all five
/// coefficients `(x1, x2, x3, v4, v5)`.
pub struct FullRow {
    pub params: (u32, u32, u32),
    pub solutions: &'static [[f64; 5]],
    /// Number of isometry classes among the solutions, when published.
    pub classes: Option<usize>,
}

/// A space expected to have exactly these `(x1, x2)` solution pairs.
pub struct PlanarRow {
    pub params: (u32, u32, u32),
    pub solutions: &'static [[f64; 2]],
}

/// Seven spaces with two non-isometric solutions each; tolerance 1e-4.
pub const TWO_SOLUTION_SPACES: &[FullRow] = &[
    FullRow {
        params: (1, 2, 3),
        solutions: &[
            [0.472295, 1.19781, 1.0, 1.77808, 0.60798],
            [1.49887, 0.714536, 1.0, 1.14012, 1.55945],
        ],
        classes: Some(2),
    },
    FullRow {
        params: (1, 2, 4),
        solutions: &[
            [1.5978, 0.76303, 1.0, 1.26653, 1.63504],
            [0.379311, 1.13315, 1.0, 1.83194, 0.490535],
        ],
        classes: Some(2),
    },
    FullRow {
        params: (1, 2, 5),
        solutions: &[
            [1.66213, 0.796466, 1.0, 1.36024, 1.6853],
            [0.31734, 1.09462, 1.0, 1.86425, 0.411959],
        ],
        classes: Some(2),
    },
    FullRow {
        params: (1, 3, 4),
        solutions: &[
            [0.48286, 1.30095, 1.0, 1.88783, 0.685127],
            [1.48800, 0.636510, 1.0, 1.21459, 1.47125],
        ],
        classes: Some(2),
    },
    FullRow {
        params: (1, 3, 5),
        solutions: &[
            [1.5613, 0.681659, 1.0, 1.3168, 1.5272],
            [0.417584, 1.24436, 1.0, 1.91656, 0.593683],
        ],
        classes: Some(2),
    },
    FullRow {
        params: (2, 3, 4),
        solutions: &[
            [0.676785, 1.49686, 1.0, 1.9581, 1.03866],
            [1.70003, 0.833603, 1.0, 1.26452, 2.01911],
        ],
        classes: Some(2),
    },
    FullRow {
        params: (2, 3, 5),
        solutions: &[
            [1.75345, 0.855002, 1.0, 1.33712, 2.02138],
            [0.586034, 1.41566, 1.0, 1.98963, 0.899876],
        ],
        classes: Some(2),
    },
];

/// Four spaces with four non-isometric solutions each; tolerance 1e-4 on
/// `(x1, x2)`.
pub const FOUR_SOLUTION_SPACES: &[PlanarRow] = &[
    PlanarRow {
        params: (3, 4, 5),
        solutions: &[
            [0.514582, 0.594076],
            [0.727423, 0.847601],
            [0.761962, 1.65282],
            [1.79298, 0.879305],
        ],
    },
    PlanarRow {
        params: (3, 4, 6),
        solutions: &[
            [0.480679, 0.628472],
            [0.646952, 0.857152],
            [0.682517, 1.57948],
            [1.82385, 0.891611],
        ],
    },
    PlanarRow {
        params: (4, 5, 6),
        solutions: &[
            [0.499825, 0.558034],
            [0.793644, 0.891443],
            [0.809993, 1.73784],
            [1.84458, 0.904275],
        ],
    },
    PlanarRow {
        params: (5, 6, 7),
        solutions: &[
            [0.495154, 0.541631],
            [0.832054, 0.913651],
            [0.841356, 1.79029],
            [1.87675, 0.92032],
        ],
    },
];

/// Degenerate-family spaces with two solutions on the `x2 = 1` branch;
/// tolerance 1e-4.
pub const PAIR_TWO_SOLUTION_SPACES: &[FullRow] = &[
    FullRow {
        params: (1, 1, 2),
        solutions: &[
            [1.61237, 1.0, 1.0, 1.11629, 1.61237],
            [0.387628, 1.0, 1.0, 1.48371, 0.387628],
        ],
        classes: None,
    },
    FullRow {
        params: (1, 1, 3),
        solutions: &[
            [1.7303, 1.0, 1.0, 1.26935, 1.7303],
            [0.269703, 1.0, 1.0, 1.64493, 0.269703],
        ],
        classes: None,
    },
    FullRow {
        params: (1, 1, 4),
        solutions: &[
            [1.79057, 1.0, 1.0, 1.37987, 1.79057],
            [0.209431, 1.0, 1.0, 1.73124, 0.209431],
        ],
        classes: None,
    },
];

/// Spaces whose two solutions form a single isometry class; published to
/// four digits, tolerance 1e-3.
pub const PAIR_ONE_CLASS_SPACES: &[FullRow] = &[
    FullRow {
        params: (2, 2, 1),
        solutions: &[
            [1.586, 2.089, 1.0, 1.473, 2.307],
            [0.7589, 0.4785, 1.0, 0.7052, 1.1037],
        ],
        classes: Some(1),
    },
    FullRow {
        params: (3, 3, 2),
        solutions: &[
            [1.244, 2.001, 1.0, 1.847, 1.975],
            [0.6219, 0.4997, 1.0, 0.923, 0.9871],
        ],
        classes: Some(1),
    },
];

/// Spaces with four solutions in three isometry classes; tolerance 1e-3.
pub const PAIR_THREE_CLASS_SPACES: &[FullRow] = &[
    FullRow {
        params: (2, 2, 3),
        solutions: &[
            [0.70564, 1.0, 1.0, 1.6260, 1.0316],
            [1.7749, 1.0, 1.0, 1.3074, 2.1434],
            [0.5547, 0.7405, 1.0, 1.3726, 0.8039],
            [0.7491, 1.3504, 1.0, 1.8535, 1.0856],
        ],
        classes: Some(3),
    },
    FullRow {
        params: (3, 3, 4),
        solutions: &[
            [0.8206, 1.0, 1.0, 1.6631, 1.2882],
            [1.8673, 1.0, 1.0, 1.34463, 2.3504],
            [0.5086, 0.6038, 1.0, 1.2232, 0.7877],
            [0.8423, 1.6561, 1.0, 2.0256, 1.3046],
        ],
        classes: Some(3),
    },
    FullRow {
        params: (4, 4, 3),
        solutions: &[
            [1.1969, 1.0, 1.0, 1.4815, 1.898],
            [1.8027, 1.0, 1.0, 1.2629, 2.544],
            [0.57292, 0.49478, 1.0, 0.97531, 0.9344],
            [1.1579, 2.0211, 1.0, 1.9712, 1.8884],
        ],
        classes: Some(3),
    },
];

/// Very large parameters solved in extended precision, compared relatively.
/// The first two rows were published under a truncated first parameter; the
/// dimensions quoted alongside them (1000014 and 20400596) pin it to
/// 100000, which also reproduces every listed digit.
pub struct LargeRow {
    pub params: (u32, u32, u32),
    pub solutions: &'static [[f64; 2]],
    pub rel_tol: f64,
}

pub const LARGE_PARAMETER_SPACES: &[LargeRow] = &[
    LargeRow {
        params: (100000, 2, 3),
        solutions: &[
            [0.49999812508758, 0.5000039582837693],
            [23333.9023351598, 23333.902296584482],
        ],
        rel_tol: 1e-8,
    },
    LargeRow {
        params: (100000, 99, 3),
        solutions: &[
            [0.50024111495038, 0.4997597438771520],
            [984.203593167392, 984.36732072352000],
        ],
        rel_tol: 1e-8,
    },
    // published with the middle parameters in the other order; the listed
    // coefficients follow the pair convention of (2, 99999, 100000)
    LargeRow {
        params: (2, 99999, 100000),
        solutions: &[
            [0.50000562505320, 1.5000033749343452],
            [1.50000837497409, 0.5000106250719541],
        ],
        rel_tol: 1e-8,
    },
    LargeRow {
        params: (100000, 99999, 99998),
        solutions: &[
            [0.5000012500593759991, 0.49999875004062503385],
            [1.0000100001500034167, 2.00000999994999841665],
            [1.0000100001500055835, 1.00000500007500279172],
            [2.0000049998749947081, 1.00000500007500170836],
        ],
        rel_tol: 1e-12,
    },
];
