use std::time::Instant;
use kostlan::ensemble::sample_real;
use kostlan::parallel::substream;
use kostlan::roots::intpoly::IntPoly;
use kostlan::roots::sturm::SturmChain;

fn main() {
    for &d in &[50u32, 100] {
        let s = sample_real(d, &mut substream(1, 0));
        let c = s.monomial_coeffs();
        let t0 = Instant::now();
        let p = IntPoly::from_f64_coeffs(&c);
        let t_conv = t0.elapsed();
        let t0 = Instant::now();
        let sf = p.square_free_part();
        let t_sf = t0.elapsed();
        let t0 = Instant::now();
        let chain = SturmChain::new(&sf);
        let t_chain = t0.elapsed();
        let t0 = Instant::now();
        let n = chain.count_all();
        let t_count = t0.elapsed();
        println!("d={d}: conv {:?} sqfree {:?} chain {:?} count {:?} (roots {n})",
                 t_conv, t_sf, t_chain, t_count);
    }
}
