//! Natural logarithm of the gamma function for positive real arguments.
//!
//! Three regimes:
//! * `x` in `[1.5, 2.5]`: Taylor series of `ln Γ(2 + z)` in `z = x - 2`,
//!   whose coefficients are `(-1)^k (ζ(k) - 1) / k`. Keeps full relative
//!   accuracy around the zero of `ln Γ` at 2.
//! * `x < 1.5`: upward shift `ln Γ(x) = ln Γ(x + 1) - ln x`. Near the zero at
//!   1 the two pieces cancel by a bounded factor only.
//! * `2.5 < x < 12`: downward shift onto `[1.5, 2.5]`, adding positive logs.
//! * `x >= 12`: Stirling series with Bernoulli corrections.

// Tabulated constants keep every published digit.
#![allow(clippy::excessive_precision)]

use crate::error::{domain, Result};
use crate::real::Real;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431;

/// `ζ(k) - 1` for `k = 2, 3, ...`.
const ZETA_MINUS_ONE: [f64; 38] = [
    0.644_934_066_848_226_436_472_415_166_646_025_19,
    0.202_056_903_159_594_285_399_738_161_511_449_99,
    0.082_323_233_711_138_191_516_003_696_541_167_903,
    0.036_927_755_143_369_926_331_365_486_457_034_168,
    0.017_343_061_984_449_139_714_517_929_790_920_528,
    0.008_349_277_381_922_826_839_797_549_849_796_759_6,
    0.004_077_356_197_944_339_378_685_238_508_652_465_3,
    0.002_008_392_826_082_214_417_852_769_232_412_060_5,
    0.000_994_575_127_818_085_337_145_958_900_319_017_01,
    0.000_494_188_604_119_464_558_702_282_526_469_936_47,
    0.000_246_086_553_308_048_298_637_998_047_739_670_96,
    0.000_122_713_347_578_489_146_751_836_526_357_395_71,
    6.124_813_505_870_482_925_854_510_513_533_374_7e-5,
    3.058_823_630_702_049_355_172_851_064_506_258_8e-5,
    1.528_225_940_865_187_173_257_148_763_672_202_3e-5,
    7.637_197_637_899_762_273_600_293_563_029_213_1e-6,
    3.817_293_264_999_839_856_461_644_621_939_730_5e-6,
    1.908_212_716_553_938_925_656_957_795_101_353_3e-6,
    9.539_620_338_727_961_131_520_386_834_493_459_5e-7,
    4.769_329_867_878_064_631_167_196_043_730_459_6e-7,
    2.384_505_027_277_329_900_036_481_867_529_949_3e-7,
    1.192_199_259_653_110_730_677_887_188_823_263_8e-7,
    5.960_818_905_125_947_961_244_020_793_580_122_1e-8,
    2.980_350_351_465_228_018_606_370_506_936_601_9e-8,
    1.490_155_482_836_504_123_465_850_663_069_863_6e-8,
    7.450_711_789_835_429_491_981_004_170_604_117_5e-9,
    3.725_334_024_788_457_054_819_204_018_402_412_5e-9,
    1.862_659_723_513_049_006_403_909_945_416_954_9e-9,
    9.313_274_324_196_681_828_717_647_350_212_223_8e-10,
    4.656_629_065_033_784_072_989_233_251_219_984e-10,
    2.328_311_833_676_505_492_001_455_975_940_455_7e-10,
    1.164_155_017_270_051_977_592_973_835_456_215_5e-10,
    5.820_772_087_902_700_889_243_685_989_106_371_3e-11,
    2.910_385_044_497_099_686_929_425_227_883_175_5e-11,
    1.455_192_189_104_198_423_592_963_224_532_850_6e-11,
    7.275_959_835_057_481_014_520_869_012_344_616_9e-12,
    3.637_979_547_378_651_190_237_236_355_881_580_3e-12,
    1.818_989_650_307_065_947_584_832_100_728_737_6e-12,
];

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=10`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

const STIRLING_THRESHOLD: f64 = 12.0;

/// Returns `ln Γ(x)` for finite `x > 0`.
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() || x <= T::zero() {
        return domain("x", x.to_f64_lossy(), "log_gamma needs a finite positive argument");
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked<T: Real>(x: T) -> T {
    let one = T::one();
    let lo = T::lit(1.5);
    let hi = T::lit(2.5);
    if x < lo {
        // x + 1 lands in [1, 2.5); a second shift is only needed below 0.5.
        return log_gamma_unchecked(x + one) - x.ln();
    }
    if x <= hi {
        return log_gamma_near_two(x - T::lit(2.0));
    }
    if x < T::lit(STIRLING_THRESHOLD) {
        let mut acc = T::zero();
        let mut y = x;
        while y > hi {
            y = y - one;
            acc = acc + y.ln();
        }
        return log_gamma_near_two(y - T::lit(2.0)) + acc;
    }
    stirling(x)
}

/// `ln Γ(2 + z)` for `|z| <= 0.5`.
fn log_gamma_near_two<T: Real>(z: T) -> T {
    // Horner from the highest retained power down to z^2.
    let mut poly = T::zero();
    for (i, c) in ZETA_MINUS_ONE.iter().enumerate().rev() {
        let k = (i + 2) as f64;
        let sign = if (i + 2) % 2 == 0 { 1.0 } else { -1.0 };
        poly = poly * z + T::lit(sign * c / k);
    }
    z * (T::lit(1.0 - EULER_GAMMA) + z * poly)
}

fn stirling<T: Real>(x: T) -> T {
    let half_ln_two_pi = T::lit(0.918_938_533_204_672_741_780_329_736_405_617_6);
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut corr = T::zero();
    for c in STIRLING.iter().rev() {
        corr = corr * inv2 + T::lit(*c);
    }
    (x - T::lit(0.5)) * x.ln() - x + half_ln_two_pi + corr * inv
}
