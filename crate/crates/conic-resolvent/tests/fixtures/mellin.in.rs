// Frozen high-precision reference values (extended-precision arithmetic).
// Layout documented at each constant; regenerating requires no project code.

// Gaussian bumps u_j(t) = A_j exp(-(t - t_j)^2 / (2 w_j^2)), t = ln r,
// on the 4096-point grid [1e-4, 1e4]:
//   j = 0: |A| = 1.3, arg A = 0.7,  t_0 = 3.0, w = 0.35, gamma = 0.8
//   j = 1: |A| = 0.8, arg A = -1.1, t_1 = 2.7, w = 0.30, gamma = -1.3
//   j = 2: |A| = 0.5, arg A = 0,    t_2 = 3.3, w = 0.40, gamma = 2.1
// (u_j carries the phase twist e^{i gamma_j t}.)
// Weight/order family: n = 3, l = -1, beta = 1, outgoing branch.

const B_NORM_TARGET: f64 = 24.65359526324084;
const B_NORM_SOURCE: f64 = 3735.392797093154;
const B_DUAL_NORM: f64 = 8488.337948356402;
// j = 1 component alone, via the continuum frequency integral
const B_NORM_J1_CONTINUUM: f64 = 21.86214402218474;
const WEIGHTED_L2_PLUS: f64 = 41471.84605277666;
const WEIGHTED_L2_MINUS: f64 = 1.7150951543471322;

// Transform bins of the j = 0 bump with weight shift 1.5:
// (ascending-order index, tau, Re, Im)
const MELLIN_BIN_REFERENCE: &[(usize, f64, f64, f64)] = &[
    (2048, 0.0, -112.67724590042866, -11.921193197288154),
    (2049, 0.34101081353651974, -40.32702723976108, -101.05503775170264),
    (2047, -0.34101081353651974, -64.7681334678487, 96.62627520879214),
    (2050, 0.6820216270730395, 66.82805786667568, -78.38215431297242),
    (2053, 1.7050540676825987, -58.74299026506991, 54.649327718704605),
    (2043, -1.7050540676825987, -64.26263209365112, -91.81478281975804),
    (2060, 4.092129762438237, -22.942673096198387, -14.62005766953223),
    (2036, -4.092129762438237, -56.85498172264282, 21.176090401418),
];
