// Frozen high-precision reference values (extended-precision arithmetic).
// Layout documented at each constant; regenerating requires no project code.

// Multiplier family: n = 3, l = -0.6, beta = 1, outgoing branch,
// regulators (10, 10, 10), leading coefficient 5 pi.
// (tau, nu, term_i, term_ii, term_iii, term_iv)
const ARG_TERMS_REFERENCE: &[(f64, f64, f64, f64, f64, f64)] = &[
    (0.0, 0.0, 1.5787097084991382, 0.46182692150335064, 0.0, 0.0),
    (0.35, 0.0, 1.5757546086485679, 0.4613397619422804, -0.0028247405531034472, 0.9216053789771229),
    (1.0, 0.0, 1.554856738531833, 0.4578831608845003, -0.007998933589260213, 0.6331464492953446),
    (-1.0, 0.0, 1.554856738531833, 0.4578831608845003, 0.007998933589260213, -0.6331464492953446),
    (0.5, 0.7, 1.5688409591450194, 0.46019571303966184, -0.004010292739826641, 0.4490855316080675),
    (2.0, 1.0, 1.4802516805350199, 0.4453447634621472, -0.015377036008475193, 0.304561968770395),
    (10.0, 5.0, 0.5801916715859811, 0.25961822386311, -0.035619833053799115, 0.06386697364639583),
    (100.0, 3.0, 0.0016842219375325692, 0.020665523790564404, -0.007913490552585067, 0.00799256440866484),
    (1000.0, 1000.0, 0.0055537404147951875, 0.005836783250368335, -0.00039998006766659615, 0.0003999999606666724),
    (0.01, 0.03, 1.578700116485268, 0.4618253378241298, -8.080726347380096e-05, 0.08768665512950047),
    (5.0, 0.0, 1.123944257650425, 0.38147024265780705, -0.03218840450618435, 0.15809560425804703),
    (0.0, 2.0, 1.5477516108239386, 0.45667341684594315, 0.0, 0.0),
];

// Theta(0, 0) for the deliberately broken family n = 3, l = -1,
// beta = 50, leading coefficient 0, regulators (1.01, 1.01, 1.01):
// far below the positivity window.
const BROKEN_THETA_ORIGIN: f64 = -1377.905167738998;

// Commutator multiplier of the reference family at lambda = 0.5
// for large tau; |value| grows like tau^{1 - 2(l+1) + 2 beta}.
// (tau, lambda, value)
const COMMUTATOR_LARGE_TAU: &[(f64, f64, f64)] = &[
    (1000.0, 0.5, -105662194166071.83),
    (10000.0, 0.5, -1.6747174426490422e+16),
    (100000.0, 0.5, -2.654249586484268e+18),
];

const COMMUTATOR_GROWTH_EXPONENT: f64 = 2.2;
