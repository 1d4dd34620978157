//! Values produced by an independent brute-force implementation (direct
//! field arithmetic, exact group-ring sums, rational series exponentiation)
//! and frozen here.

use klsym_core::char_sums::Kernel;
use klsym_core::epsilon::constant_c_closed;
use klsym_core::lseries::{extract_functional_constant, Engine, EngineOptions};
use num_bigint::BigInt;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn engines() -> [Engine; 2] {
    [
        Engine::default(),
        Engine::new(EngineOptions {
            kernel: Kernel::Orbits,
            ..EngineOptions::default()
        }),
    ]
}

#[test]
fn lambdas_match_oracle() {
    let cases: [(u64, u32, &[i64]); 5] = [
        (7, 7, &[3430, -235298, -18966195290, 66410495990398]),
        (11, 7, &[-14641, -643076643, -3138428376721]),
        (13, 7, &[23829, -1928981379, -7711015623051]),
        (3, 11, &[621, -1291059, -79381539, -294589969443, -353179075222899]),
        (5, 3, &[25, -625, 15625]),
    ];
    for e in engines() {
        for (p, k, want) in cases {
            assert_eq!(e.lambdas(p, k, want.len() as u32).unwrap(), ints(want), "p={p}, k={k}");
        }
    }
}

#[test]
fn polynomials_match_oracle() {
    let cases: [(u64, u32, &[i64]); 10] = [
        (5, 10, &[1, 5250, 48828125]),
        (5, 8, &[1, 1650, 1953125]),
        (7, 7, &[1, 3430, 5764801]),
        (3, 10, &[1, -252, 177147]),
        (11, 5, &[1, 0, -1771561]),
        (13, 6, &[1, -6422, 62748517]),
        (11, 7, &[1, -14641, -214358881, 3138428376721]),
        (13, 7, &[1, 23829, -680580069, -23298085122481]),
        (3, 11, &[1, 621, -452709, -387420489]),
        (3, 9, &[1, 54, 59049]),
    ];
    let e = Engine::default();
    for (p, k, want) in cases {
        let m = e.reconstruct_lpolynomial(p, k, None).unwrap();
        assert_eq!(m.coeffs, ints(want), "p={p}, k={k}");
        let fc = extract_functional_constant(&m).unwrap();
        assert_eq!(fc.c, constant_c_closed(p, k).unwrap(), "p={p}, k={k}");
    }
}

#[test]
fn power_sums_match_hand_values() {
    let e = Engine::default();
    assert_eq!(e.power_sum(3, 1, 1).unwrap(), BigInt::from(-1));
    assert_eq!(e.power_sum(3, 2, 1).unwrap(), BigInt::from(-1));
    assert_eq!(e.power_sum(5, 3, 1).unwrap(), BigInt::from(24));
}
