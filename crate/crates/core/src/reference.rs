//! Published values for `p = 31` and `p = 151`, used to flag where a
//! recomputation departs from the printed record.

use serde::{Deserialize, Serialize};

use crate::classrel::{balanced, relation_holds, ClassRelationData, Resolution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedData {
    pub p: u64,
    pub h: Vec<Vec<i64>>,
    pub d: u64,
    /// `x_1, ..., x_u`.
    pub x_head: Vec<i64>,
    pub n0: u64,
    pub solutions: Vec<Vec<u64>>,
    /// Largest `n` in the theorem statement.
    pub stated_n_bound: u64,
    /// Largest `n` in the concluding sentence of the proof.
    pub proved_n_bound: u64,
    /// Discriminant quoted for the imaginary quadratic subfield.
    pub quadratic_disc: i64,
    /// Candidate orders said to be eliminated.
    pub eliminated: Vec<u64>,
}

pub fn published(p: u64) -> Option<PublishedData> {
    match p {
        31 => Some(PublishedData {
            p,
            h: vec![vec![18, 14, 3], vec![0, 2, 1], vec![0, 0, 1]],
            d: 9,
            x_head: vec![1, 2, 4],
            n0: 3,
            solutions: vec![
                vec![2, 0, 1, 1, 3, 2],
                vec![2, 2, 0, 1, 1, 3],
                vec![3, 0, 3, 0, 3, 0],
                vec![3, 2, 2, 0, 1, 1],
                vec![1, 3, 2, 2, 0, 1],
                vec![1, 1, 3, 2, 2, 0],
                vec![0, 3, 0, 3, 0, 3],
                vec![0, 1, 1, 3, 2, 2],
            ],
            stated_n_bound: 3,
            proved_n_bound: 3,
            quadratic_disc: -31,
            eliminated: vec![1, 3],
        }),
        151 => Some(PublishedData {
            p,
            h: vec![
                vec![3934, 1430, 390, 464, 2457],
                vec![0, 2, 0, 0, 1],
                vec![0, 0, 2, 0, 1],
                vec![0, 0, 0, 2, 1],
                vec![0, 0, 0, 0, 1],
            ],
            d: 1967,
            x_head: vec![1, -715, -195, -232, 335],
            n0: 5,
            solutions: vec![
                vec![4, 1, 4, 1, 5, 1, 4, 1, 4, 0],
                vec![5, 3, 2, 5, 5, 0, 2, 3, 0, 0],
                vec![1, 4, 1, 4, 0, 4, 1, 4, 1, 5],
                vec![0, 2, 3, 0, 0, 5, 3, 2, 5, 5],
            ],
            stated_n_bound: 7,
            proved_n_bound: 5,
            quadratic_disc: -157,
            eliminated: vec![1, 7, 281],
        }),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub item: String,
    pub printed: String,
    pub computed: String,
    pub note: String,
}

impl Discrepancy {
    pub fn warning(&self) -> String {
        let mut w = format!("{}: printed {}, computed {}", self.item, self.printed, self.computed);
        if !self.note.is_empty() {
            w.push_str("; ");
            w.push_str(&self.note);
        }
        w
    }
}

fn push(out: &mut Vec<Discrepancy>, item: &str, printed: String, computed: String, note: String) {
    out.push(Discrepancy {
        item: item.to_string(),
        printed,
        computed,
        note,
    });
}

fn sorted(mut v: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    v.sort();
    v
}

/// Every disagreement between the recomputation and the printed record.
pub fn compare(data: &ClassRelationData) -> Vec<Discrepancy> {
    let Some(pubd) = published(data.p) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    if data.h != pubd.h {
        push(&mut out, "H", format!("{:?}", pubd.h), format!("{:?}", data.h), String::new());
    }
    // the printed vector against the printed matrix, column by column
    let x_pub: Vec<i64> = pubd.x_head.iter().map(|&v| v.rem_euclid(pubd.d as i64)).collect();
    for j in 0..pubd.h.len() {
        let s: i128 = (0..=j).map(|i| pubd.h[i][j] as i128 * x_pub[i] as i128).sum();
        if j > 0 && s.rem_euclid(pubd.d as i128) != 0 {
            push(
                &mut out,
                &format!("printed x_{} against printed H column {}", j + 1, j + 1),
                format!("x_{} = {}", j + 1, pubd.x_head[j]),
                format!("column sum {} (mod {})", s.rem_euclid(pubd.d as i128), pubd.d),
                "the printed vector does not satisfy the printed relation".into(),
            );
        }
    }
    let survivors = &data.resolution.survivors;
    match &data.resolution.outcome {
        Resolution::Resolved(d) if *d == pubd.d => {}
        _ => push(
            &mut out,
            "order of x_1",
            format!("{} (eliminating {:?})", pubd.d, pubd.eliminated),
            format!("surviving candidates {survivors:?}"),
            String::new(),
        ),
    }
    for e in &pubd.eliminated {
        if survivors.contains(e) {
            push(
                &mut out,
                &format!("elimination of candidate order {e}"),
                "eliminated".into(),
                "survives the norm-order constraint".into(),
                String::new(),
            );
        }
    }
    if let Some(a) = data.analyses.iter().find(|a| a.d == pubd.d) {
        let u = pubd.x_head.len();
        let x: Vec<i64> = a.x_vec[..u].iter().map(|&v| balanced(v, a.d)).collect();
        for (k, (&c, &pr)) in x.iter().zip(&pubd.x_head).enumerate() {
            if (c - pr).rem_euclid(a.d as i64) != 0 {
                push(
                    &mut out,
                    &format!("x_{} modulo {}", k + 1, a.d),
                    pr.to_string(),
                    c.to_string(),
                    String::new(),
                );
            }
        }
        match &a.solutions {
            Some(s) => {
                if s.n0 != pubd.n0 {
                    push(&mut out, "n0", pubd.n0.to_string(), s.n0.to_string(), String::new());
                }
                if sorted(s.solutions.clone()) != sorted(pubd.solutions.clone()) {
                    let consistent = pubd
                        .solutions
                        .iter()
                        .all(|t| relation_holds(&t[..u], pubd.n0, &x_pub, pubd.d));
                    push(
                        &mut out,
                        &format!("solutions at n0 for order {}", a.d),
                        format!("{} tuples {:?}", pubd.solutions.len(), pubd.solutions),
                        format!("{} tuples {:?}", s.solutions.len(), s.solutions),
                        if consistent {
                            "the printed tuples solve the relation for the printed x-vector".into()
                        } else {
                            String::new()
                        },
                    );
                }
            }
            None => push(&mut out, "n0", pubd.n0.to_string(), "none below the cap".into(), String::new()),
        }
    }
    if pubd.stated_n_bound != pubd.proved_n_bound {
        push(
            &mut out,
            "range of n",
            format!("n <= {} in the statement but n <= {} in the proof", pubd.stated_n_bound, pubd.proved_n_bound),
            "a range set by the solver certificate".into(),
            "verdicts follow the computed n0 and Z-sets only".into(),
        );
    }
    if pubd.quadratic_disc != -(data.p as i64) {
        push(
            &mut out,
            "imaginary quadratic subfield",
            format!("Q(sqrt({}))", pubd.quadratic_disc),
            format!("Q(sqrt(-{}))", data.p),
            String::new(),
        );
    }
    out
}
