use std::time::Instant;
use kostlan::ensemble::sample_real;
use kostlan::parallel::substream;
use kostlan::roots;

fn main() {
    for &d in &[16u32, 50, 100, 256, 400] {
        let n = if d <= 100 { 20 } else { 5 };
        let samples: Vec<_> = (0..n).map(|i| sample_real(d, &mut substream(1, i))).collect();
        let t0 = Instant::now();
        let mut tot = 0usize;
        for s in &samples { tot += roots::count_real_roots_fast(s).unwrap().total; }
        let fast = t0.elapsed().as_secs_f64() / n as f64;
        let t1 = Instant::now();
        let mut tot2 = 0usize;
        if d <= 100 {
            for s in &samples { tot2 += roots::count_real_roots_rp1(s).unwrap().total; }
        }
        let sturm = t1.elapsed().as_secs_f64() / n as f64;
        println!("d={d}: fast {:.3} ms/sample (mean count {:.1}), sturm {:.1} ms/sample ({})",
            fast*1e3, tot as f64 / n as f64, sturm*1e3, tot2);
    }
}
