//! Built-in presentation corpus, shipped with the binary.

pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "kx_x2", source: include_str!("../fixtures/kx_x2.alg") },
    Fixture { name: "kx_x3", source: include_str!("../fixtures/kx_x3.alg") },
    Fixture { name: "m2_n2", source: include_str!("../fixtures/m2_n2.alg") },
    Fixture { name: "ex3_5", source: include_str!("../fixtures/ex3_5.alg") },
    Fixture { name: "ex5_4", source: include_str!("../fixtures/ex5_4.alg") },
    Fixture { name: "ex5_5", source: include_str!("../fixtures/ex5_5.alg") },
    Fixture { name: "ex5_6_n3", source: include_str!("../fixtures/ex5_6_n3.alg") },
    Fixture { name: "ex5_6_n4", source: include_str!("../fixtures/ex5_6_n4.alg") },
    Fixture { name: "ex5_7", source: include_str!("../fixtures/ex5_7.alg") },
    Fixture { name: "ex5_8_small", source: include_str!("../fixtures/ex5_8_small.alg") },
    Fixture { name: "ex6_1_small", source: include_str!("../fixtures/ex6_1_small.alg") },
    Fixture { name: "ex6_2", source: include_str!("../fixtures/ex6_2.alg") },
    Fixture { name: "ex6_3_small", source: include_str!("../fixtures/ex6_3_small.alg") },
    Fixture { name: "ex6_4", source: include_str!("../fixtures/ex6_4.alg") },
    Fixture { name: "remark6_8_n4", source: include_str!("../fixtures/remark6_8_n4.alg") },
];

pub fn find(filter: &str) -> Vec<&'static Fixture> {
    FIXTURES.iter().filter(|f| f.name.contains(filter)).collect()
}
