#![allow(dead_code)]

use kpn_core::kahn::Stream;
use kpn_core::laws::{gen_net, gen_random_net, GenParams};
use kpn_core::Net;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_net(seed: u64) -> Net {
    gen_random_net(&GenParams::new(seed))
}

pub fn net_of(seed: u64, dom: usize, cod: usize) -> Net {
    gen_net(&mut rng(seed), &GenParams::new(seed), dom, cod, true)
}

/// Same net under random port and operator numberings.
pub fn shuffled(net: &Net, seed: u64) -> Net {
    let mut r = rng(seed);
    let mut perm: Vec<usize> = (0..net.port_count()).collect();
    perm.shuffle(&mut r);
    let mut ops: Vec<usize> = (0..net.operators().len()).collect();
    ops.shuffle(&mut r);
    net.renumbered(&perm, &ops)
}

/// Integer-valued streams of random lengths.
pub fn int_streams(r: &mut impl Rng, count: usize) -> Vec<Stream> {
    (0..count)
        .map(|_| {
            let len = r.gen_range(0..8);
            Stream((0..len).map(|_| r.gen_range(-5..=5) as f64).collect())
        })
        .collect()
}
