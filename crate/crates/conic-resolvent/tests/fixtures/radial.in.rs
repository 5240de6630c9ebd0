// Frozen high-precision reference values (extended-precision arithmetic).
// Layout documented at each constant; regenerating requires no project code.

// Zero-energy critical couplings of the unit square well (n = 3),
// from extended-precision power-series shooting: the growing
// exterior branch vanishes. Analytically pi^2/4 and pi^2.
const CRITICAL_COUPLING_S: f64 = 2.4674011002723395;
const CRITICAL_COUPLING_P: f64 = 9.869604401089358;

// Free outgoing resolvent in dimension 3, mode j = 0, sigma = 0.7,
// input f = exp(-(ln r)^2), evaluated by extended-precision
// convolution with the closed-form kernel on the default
// 4096-point grid over [1e-4, 1e4].
// (grid index, r, Re u, Im u)
const FREE_RESOLVENT_REFERENCE: &[(usize, f64, f64, f64)] = &[
    (1200, 0.022096441781864127, -0.34578190647196994, 2.315991732316133),
    (1500, 0.08519280747956327, -0.34559104862761575, 2.314711533909767),
    (1800, 0.3284607774364309, -0.3438942415864411, 2.295731563305516),
    (2047, 0.9977533601136586, -0.41036715282366665, 2.1323257647931046),
    (2150, 1.585784615570165, -0.5874270313462098, 1.8688938383296474),
    (2350, 3.8991019509887805, -1.0028969683413829, 0.33997892402098756),
    (2550, 9.58704976384092, 0.30438695817683686, 0.1431644957892619),
    (2750, 23.572485236261706, -0.09860082496657803, -0.09998082386907844),
    (3000, 72.57814446249924, 0.03911949277867405, 0.02340786694434467),
    (3300, 279.8249577672953, 0.00537680905869108, 0.010530925223874636),
];
