//! Reference oracles for the acceptance suite. Everything here recomputes
//! results through dense arithmetic and textbook formulas, sharing no code
//! path with the library's sparse kernels.

use altlasso::FeatureMatrix;

/// Expands a sparse matrix into p dense columns of length n.
pub fn densify(matrix: &FeatureMatrix) -> Vec<Vec<f64>> {
    (0..matrix.p())
        .map(|j| {
            let mut col = vec![0.0; matrix.n()];
            for (m, v) in matrix.column(j).iter() {
                col[m] = v;
            }
            col
        })
        .collect()
}

fn log1p_exp(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

fn dense_predict(columns: &[Vec<f64>], beta: &[f64]) -> Vec<f64> {
    let n = columns.first().map_or(0, Vec::len);
    let mut z = vec![0.0; n];
    for (col, &b) in columns.iter().zip(beta) {
        for (zm, &x) in z.iter_mut().zip(col) {
            *zm += x * b;
        }
    }
    z
}

/// Penalized objective at beta, evaluated densely.
pub fn dense_objective(
    columns: &[Vec<f64>],
    y: &[f64],
    beta: &[f64],
    rho: f64,
    logistic: bool,
) -> f64 {
    let z = dense_predict(columns, beta);
    let fit: f64 = if logistic {
        z.iter().zip(y).map(|(&zm, &ym)| log1p_exp(-ym * zm)).sum()
    } else {
        z.iter().zip(y).map(|(&zm, &ym)| 0.5 * (zm - ym) * (zm - ym)).sum()
    };
    fit + rho * beta.iter().map(|b| b.abs()).sum::<f64>()
}

/// Maximum stationarity violation at beta, evaluated densely.
pub fn dense_kkt_residual(
    columns: &[Vec<f64>],
    y: &[f64],
    beta: &[f64],
    rho: f64,
    logistic: bool,
) -> f64 {
    let z = dense_predict(columns, beta);
    let grad: Vec<f64> = z
        .iter()
        .zip(y)
        .map(|(&zm, &ym)| {
            if logistic {
                -ym * sigmoid(-ym * zm)
            } else {
                zm - ym
            }
        })
        .collect();
    let mut worst = 0.0f64;
    for (col, &b) in columns.iter().zip(beta) {
        if col.iter().all(|&x| x == 0.0) {
            continue;
        }
        let g: f64 = col.iter().zip(&grad).map(|(&x, &gm)| x * gm).sum();
        let r = if b != 0.0 {
            (g + rho * b.signum()).abs()
        } else {
            (g.abs() - rho).max(0.0)
        };
        worst = worst.max(r);
    }
    worst
}

/// Penalized objective along a line, b -> f(z + x b, y) + rho|b|, with x
/// given densely.
pub fn line_objective(z: &[f64], y: &[f64], x: &[f64], b: f64, rho: f64, logistic: bool) -> f64 {
    let mut obj = 0.0;
    for ((&zm, &ym), &xm) in z.iter().zip(y).zip(x) {
        let v = zm + xm * b;
        obj += if logistic {
            log1p_exp(-ym * v)
        } else {
            0.5 * (v - ym) * (v - ym)
        };
    }
    obj + rho * b.abs()
}

/// Brute-force minimizer of a convex scalar function: a grid scan locates
/// the unimodal bracket, then golden-section search shrinks it.
pub fn golden_grid_minimize(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    grid_points: usize,
    shrinks: usize,
) -> f64 {
    assert!(grid_points >= 2 && hi > lo);
    let step = (hi - lo) / grid_points as f64;
    let mut best_i = 0;
    let mut best_v = f64::INFINITY;
    for i in 0..=grid_points {
        let v = f(lo + step * i as f64);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    assert!(
        best_i != 0 && best_i != grid_points,
        "grid minimum at the boundary; widen [lo, hi]"
    );
    let mut a = lo + step * (best_i - 1) as f64;
    let mut b = lo + step * (best_i + 1) as f64;
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..shrinks {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[derive(Debug, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Eq,
    EdgeOp,
}

fn tokenize_dot(text: &str) -> Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' => {
                chars.next();
                toks.push(Tok::LBrace);
            }
            '}' => {
                chars.next();
                toks.push(Tok::RBrace);
            }
            '[' => {
                chars.next();
                toks.push(Tok::LBracket);
            }
            ']' => {
                chars.next();
                toks.push(Tok::RBracket);
            }
            ';' => {
                chars.next();
                toks.push(Tok::Semi);
            }
            '=' => {
                chars.next();
                toks.push(Tok::Eq);
            }
            '-' => {
                chars.next();
                if chars.next() != Some('-') {
                    return Err("lone '-' is not a token".into());
                }
                toks.push(Tok::EdgeOp);
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('\\') => match chars.next() {
                            Some(e) => s.push(e),
                            None => return Err("unterminated escape".into()),
                        },
                        Some('"') => break,
                        Some(c) => s.push(c),
                        None => return Err("unterminated string".into()),
                    }
                }
                toks.push(Tok::Str(s));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(s));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(toks)
}

/// Checks that `text` is a well-formed undirected DOT graph made of node
/// statements, `a -- b [attrs]` edge statements, and `key=value` attribute
/// statements. Returns the edge count.
pub fn validate_dot(text: &str) -> Result<usize, String> {
    let toks = tokenize_dot(text)?;
    let mut it = toks.into_iter().peekable();
    match it.next() {
        Some(Tok::Ident(k)) if k == "graph" => {}
        other => return Err(format!("expected 'graph', got {other:?}")),
    }
    match it.next() {
        Some(Tok::Ident(_)) | Some(Tok::Str(_)) => {}
        other => return Err(format!("expected graph name, got {other:?}")),
    }
    if it.next() != Some(Tok::LBrace) {
        return Err("expected '{'".into());
    }
    let mut edges = 0;
    loop {
        match it.next() {
            Some(Tok::RBrace) => break,
            Some(Tok::Ident(_)) => {
                // Attribute statement such as rank=same.
                if it.next() != Some(Tok::Eq) {
                    return Err("expected '=' after attribute name".into());
                }
                match it.next() {
                    Some(Tok::Ident(_)) | Some(Tok::Str(_)) => {}
                    other => return Err(format!("expected attribute value, got {other:?}")),
                }
                if it.next() != Some(Tok::Semi) {
                    return Err("expected ';' after attribute".into());
                }
            }
            Some(Tok::Str(_)) => match it.next() {
                Some(Tok::Semi) => {}
                Some(Tok::EdgeOp) => {
                    match it.next() {
                        Some(Tok::Str(_)) | Some(Tok::Ident(_)) => {}
                        other => return Err(format!("expected edge target, got {other:?}")),
                    }
                    if it.peek() == Some(&Tok::LBracket) {
                        it.next();
                        loop {
                            match it.next() {
                                Some(Tok::RBracket) => break,
                                Some(Tok::Ident(_)) => {
                                    if it.next() != Some(Tok::Eq) {
                                        return Err("expected '=' in attribute list".into());
                                    }
                                    match it.next() {
                                        Some(Tok::Ident(_)) | Some(Tok::Str(_)) => {}
                                        other => {
                                            return Err(format!(
                                                "expected attribute value, got {other:?}"
                                            ))
                                        }
                                    }
                                }
                                other => {
                                    return Err(format!("unexpected token {other:?} in attrs"))
                                }
                            }
                        }
                    }
                    if it.next() != Some(Tok::Semi) {
                        return Err("expected ';' after edge".into());
                    }
                    edges += 1;
                }
                other => return Err(format!("expected ';' or '--', got {other:?}")),
            },
            other => return Err(format!("unexpected token {other:?}")),
        }
    }
    if it.next().is_some() {
        return Err("content after closing '}'".into());
    }
    Ok(edges)
}
