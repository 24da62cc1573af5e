//! Exact rational kernels, ranks and solves.

use hlanti::exactq::{kernel_basis, rref, solve, Mat, Scalar};

fn main() {
    let m = Mat::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, -1]]);
    let (r, pivots) = rref(&m);
    println!("rank {} pivots {pivots:?}", m.rank());
    println!(
        "rref rows {:?}",
        r.to_rows()
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    );
    let k = kernel_basis(&m);
    println!(
        "kernel {:?}",
        k.col(0).iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );
    let b = m.apply(&[Scalar::frac(1, 3), Scalar::int(0), Scalar::half()]);
    let x = solve(&m, &b).expect("consistent system");
    assert_eq!(m.apply(&x), b);
    println!(
        "solved with x = {:?}",
        x.iter().map(|s| s.to_string()).collect::<Vec<_>>()
    );
}
