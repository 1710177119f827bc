//! Nelder-Mead downhill simplex with the standard coefficients.
//!
//! Infeasible points are expected to evaluate to `+inf`; they sort last and
//! are replaced like any other bad vertex.

const REFLECTION: f64 = 1.0;
const EXPANSION: f64 = 2.0;
const CONTRACTION: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Offset added to each coordinate of the start point to build the simplex.
    pub initial_step: f64,
    pub max_iterations: usize,
    /// Stop once every vertex is this close to the best one.
    pub diameter_tolerance: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.1,
            max_iterations: 2000,
            diameter_tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    /// Best value after each iteration, starting with the initial simplex.
    pub history: Vec<f64>,
}

pub fn minimize<F>(objective: F, start: &[f64], options: &NelderMeadOptions) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let n = start.len();
    let eval = |x: &[f64]| {
        let v = objective(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += options.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v)).collect();

    let mut history = Vec::with_capacity(options.max_iterations + 1);
    let mut iterations = 0;
    loop {
        sort_simplex(&mut simplex, &mut values);
        history.push(values[0]);
        if n == 0 || iterations >= options.max_iterations || diameter(&simplex) < options.diameter_tolerance {
            break;
        }
        iterations += 1;

        let worst = n;
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
            .collect();
        let toward = |coef: f64, from: &[f64]| -> Vec<f64> {
            centroid.iter().zip(from).map(|(c, x)| c + coef * (x - c)).collect()
        };

        let reflected = toward(-REFLECTION, &simplex[worst]);
        let f_reflected = eval(&reflected);

        if f_reflected < values[0] {
            let expanded = toward(EXPANSION, &reflected);
            let f_expanded = eval(&expanded);
            if f_expanded < f_reflected {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if f_reflected < values[n - 1] {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }

        // Outside contraction if the reflection improved on the worst, inside otherwise.
        let (contracted, f_contracted, threshold) = if f_reflected < values[worst] {
            let c = toward(CONTRACTION, &reflected);
            let f = eval(&c);
            (c, f, f_reflected)
        } else {
            let c = toward(CONTRACTION, &simplex[worst]);
            let f = eval(&c);
            (c, f, values[worst])
        };
        if f_contracted < threshold {
            simplex[worst] = contracted;
            values[worst] = f_contracted;
            continue;
        }

        let best = simplex[0].clone();
        for i in 1..=n {
            for (x, b) in simplex[i].iter_mut().zip(&best) {
                *x = b + SHRINK * (*x - b);
            }
            values[i] = eval(&simplex[i]);
        }
    }

    Minimum {
        x: simplex.swap_remove(0),
        value: values[0],
        iterations,
        history,
    }
}

/// Stable sort so equal values keep their earlier position.
fn sort_simplex(simplex: &mut Vec<Vec<f64>>, values: &mut Vec<f64>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    *simplex = order.iter().map(|&i| simplex[i].clone()).collect();
    *values = order.iter().map(|&i| values[i]).collect();
}

fn diameter(simplex: &[Vec<f64>]) -> f64 {
    let best = &simplex[0];
    simplex[1..]
        .iter()
        .map(|v| v.iter().zip(best).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}
