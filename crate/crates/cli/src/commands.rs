//! One function per CLI verb.  Pure-report verbs return the rendered
//! string; verbs that also *judge* something return an [`Outcome`] whose
//! `checks_ok` drives the exit code.

use std::fmt::Write as _;

use quarr_core::arrangement::Arrangement;
use quarr_core::derham;
use quarr_core::matroid::{mask_to_indices, Matroid};
use quarr_core::os::OSAlgebra;
use quarr_core::report::{self, PoincarePolynomial};

use crate::formats::{self, to_json};
use crate::{CliError, Format, Outcome};

fn dense_coeffs(p: &PoincarePolynomial) -> Vec<u64> {
    p.betti_vector(p.max_degree())
}

fn circuit_lists(arr: &Arrangement) -> Vec<Vec<usize>> {
    Matroid::from_arrangement(arr)
        .circuits()
        .into_iter()
        .map(mask_to_indices)
        .collect()
}

pub fn info(arr: &Arrangement, format: Format) -> String {
    let rank = Matroid::from_arrangement(arr).rank();
    let circuits = circuit_lists(arr);
    match format {
        Format::Json => to_json(&formats::InfoJson {
            ambient_dim: arr.ambient_dim(),
            hyperplane_count: arr.hyperplane_count(),
            rank,
            circuits,
            hyperplanes: formats::arrangement_rows(arr),
        }),
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "arrangement in H^{}: {} hyperplanes, rank {rank}",
                arr.ambient_dim(),
                arr.hyperplane_count()
            )
            .unwrap();
            for (i, h) in arr.hyperplanes().iter().enumerate() {
                let row: Vec<String> = h.coeffs().iter().map(|q| q.to_string()).collect();
                writeln!(out, "  {i}: ({})", row.join(", ")).unwrap();
            }
            writeln!(out, "circuits: {circuits:?}").unwrap();
            out
        }
    }
}

pub fn lattice(arr: &Arrangement, format: Format) -> String {
    let lattice = Matroid::from_arrangement(arr).lattice();
    match format {
        Format::Json => {
            let flats = lattice
                .flats()
                .iter()
                .enumerate()
                .map(|(i, f)| formats::FlatJson {
                    elements: mask_to_indices(f.elements),
                    rank: f.rank,
                    mobius: f.mobius,
                    lower_covers: lattice.lower_covers(i).to_vec(),
                })
                .collect();
            to_json(&formats::LatticeJson {
                flats,
                top_rank: lattice.top_rank(),
            })
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "intersection lattice, top rank {}", lattice.top_rank()).unwrap();
            for (i, f) in lattice.flats().iter().enumerate() {
                writeln!(
                    out,
                    "  [{i}] rank {} flat {:?}: mu = {}, covers {:?}",
                    f.rank,
                    mask_to_indices(f.elements),
                    f.mobius,
                    lattice.lower_covers(i)
                )
                .unwrap();
            }
            out
        }
    }
}

pub fn poincare(arr: &Arrangement, format: Format) -> String {
    let p = report::poincare(arr);
    let summary = report::euler_and_ranks(arr);
    match format {
        Format::Json => to_json(&formats::PoincareJson {
            coefficients: dense_coeffs(&p),
            betti: summary.betti,
            total_rank: summary.total_rank,
            euler_characteristic: summary.euler,
            display: p.to_string(),
        }),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "P(t) = {p}").unwrap();
            writeln!(out, "betti = {:?}", summary.betti).unwrap();
            writeln!(
                out,
                "total rank = {}, euler characteristic = {}",
                summary.total_rank, summary.euler
            )
            .unwrap();
            out
        }
    }
}

pub fn os_algebra(arr: &Arrangement, format: Format) -> Result<Outcome, CliError> {
    let algebra = OSAlgebra::new(arr)?;
    let circuits = circuit_lists(arr);
    // Two engines: the circuit-ideal spans behind `graded_dims`, and the
    // nbc basis counted size by size.
    let nbc_basis: Vec<Vec<Vec<usize>>> = algebra
        .nbc_basis()
        .iter()
        .map(|level| level.iter().map(|&m| mask_to_indices(m)).collect())
        .collect();
    let nbc_dims: Vec<u64> = nbc_basis.iter().map(|v| v.len() as u64).collect();
    let stdout = match format {
        Format::Json => to_json(&formats::OsJson {
            graded_dims: algebra.graded_dims().to_vec(),
            nbc_dims,
            nbc_basis,
            circuits,
            ideal_generator_count: algebra.ideal_generator_count(),
        }),
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "graded dimensions (ideal spans): {:?}",
                algebra.graded_dims()
            )
            .unwrap();
            writeln!(out, "graded dimensions (nbc count):   {nbc_dims:?}").unwrap();
            writeln!(out, "nbc basis:").unwrap();
            for (k, level) in nbc_basis.iter().enumerate() {
                writeln!(out, "  degree {}: {level:?}", 3 * k).unwrap();
            }
            writeln!(out, "circuits: {circuits:?}").unwrap();
            writeln!(out, "ideal generators: {}", algebra.ideal_generator_count()).unwrap();
            out
        }
    };
    Ok(Outcome {
        stdout,
        checks_ok: true,
    })
}

pub fn verify_recurrence(arr: &Arrangement, format: Format) -> Result<Outcome, CliError> {
    let rep = report::verify_recurrence(arr)?;
    let all_pass = rep.all_pass();
    let stdout = match format {
        Format::Json => {
            let entries = rep
                .entries
                .iter()
                .map(|e| formats::RecurrenceEntryJson {
                    index: e.index,
                    parent: dense_coeffs(&e.parent),
                    deletion: dense_coeffs(&e.deletion),
                    restriction: dense_coeffs(&e.restriction),
                    rhs: dense_coeffs(&e.rhs),
                    pass: e.pass,
                })
                .collect();
            to_json(&formats::RecurrenceJson { entries, all_pass })
        }
        Format::Text => {
            let mut out = String::new();
            for e in &rep.entries {
                writeln!(
                    out,
                    "hyperplane {}: P = {} | deletion {} | restriction {}  [{}]",
                    e.index,
                    e.parent,
                    e.deletion,
                    e.restriction,
                    if e.pass { "ok" } else { "MISMATCH" }
                )
                .unwrap();
            }
            writeln!(
                out,
                "{}",
                if all_pass {
                    "recurrence holds at every hyperplane"
                } else {
                    "recurrence FAILED"
                }
            )
            .unwrap();
            out
        }
    };
    Ok(Outcome {
        stdout,
        checks_ok: all_pass,
    })
}

pub fn validate_form(
    arr: &Arrangement,
    samples: usize,
    seed: u64,
    format: Format,
) -> Result<Outcome, CliError> {
    let rep = derham::validate_form(arr, samples, seed)?;
    let all_pass = rep.all_pass();
    let stdout = match format {
        Format::Json => {
            let integral_json = |i: &derham::SphereIntegral| formats::IntegralJson {
                value: i.value,
                error: i.error,
                samples: i.samples,
                scheme: i.scheme.name().to_string(),
            };
            to_json(&formats::ValidationJson {
                seed: rep.seed,
                samples: rep.samples,
                probe: formats::ProbeJson {
                    exponent: rep.probe.exponent,
                    residuals: rep.probe.residuals.to_vec(),
                    margin: rep.probe.margin,
                },
                closedness_max: rep.closedness_max,
                closedness_points: rep.closedness_points,
                closedness_pass: rep.closedness_pass,
                scale_residual: rep.scale_residual,
                scale_pass: rep.scale_pass,
                normalization_constant: rep.normalization.constant,
                integral: integral_json(&rep.normalization.integral),
                cross_check: integral_json(&rep.normalization.cross_check),
                schemes_agree: rep.schemes_agree,
                round_trip: rep.round_trip,
                round_trip_pass: rep.round_trip_pass,
                pullbacks: rep
                    .pullbacks
                    .iter()
                    .map(|p| formats::PullbackJson {
                        index: p.index,
                        points: p.points,
                        max_d_residual: p.max_d_residual,
                        bidegree_ok: p.bidegree_ok,
                        scale_residual: p.scale_residual,
                        pass: p.pass,
                    })
                    .collect(),
                pair_wedge_pass: rep.pair_wedge.as_ref().map(|w| w.pass),
                excess_wedge_empty: rep.excess_wedge_empty,
                all_pass,
            })
        }
        Format::Text => {
            let ok = |b: bool| if b { "ok" } else { "FAIL" };
            let mut out = String::new();
            writeln!(
                out,
                "exponent probe: e = {} (margin {:.3e}, residuals {:?})",
                rep.probe.exponent, rep.probe.margin, rep.probe.residuals
            )
            .unwrap();
            writeln!(
                out,
                "closedness: max |d omega| = {:.3e} over {} points  [{}]",
                rep.closedness_max,
                rep.closedness_points,
                ok(rep.closedness_pass)
            )
            .unwrap();
            writeln!(
                out,
                "dilation: residual {:.3e}  [{}]",
                rep.scale_residual,
                ok(rep.scale_pass)
            )
            .unwrap();
            let n = &rep.normalization;
            writeln!(
                out,
                "integral ({}): {:.8} +/- {:.2e}",
                n.integral.scheme.name(),
                n.integral.value,
                n.integral.error
            )
            .unwrap();
            writeln!(
                out,
                "cross-check ({}): {:.8} +/- {:.2e}  [{}]",
                n.cross_check.scheme.name(),
                n.cross_check.value,
                n.cross_check.error,
                if rep.schemes_agree {
                    "agree"
                } else {
                    "DISAGREE"
                }
            )
            .unwrap();
            writeln!(
                out,
                "normalization: C = {:.9e}, |C * integral - 1| = {:.3e}  [{}]",
                n.constant,
                rep.round_trip,
                ok(rep.round_trip_pass)
            )
            .unwrap();
            for p in &rep.pullbacks {
                writeln!(
                    out,
                    "pullback {}: max |d| = {:.3e}, bidegree (2,1) {}, dilation {:.3e}  [{}]",
                    p.index,
                    p.max_d_residual,
                    if p.bidegree_ok { "pure" } else { "IMPURE" },
                    p.scale_residual,
                    ok(p.pass)
                )
                .unwrap();
            }
            if let Some(w) = &rep.pair_wedge {
                writeln!(
                    out,
                    "pair wedge {:?}: max |d| = {:.3e}, bidegree (4,2) {}  [{}]",
                    w.indices,
                    w.max_d_residual,
                    if w.bidegree_ok { "pure" } else { "IMPURE" },
                    ok(w.pass)
                )
                .unwrap();
            }
            if let Some(empty) = rep.excess_wedge_empty {
                writeln!(
                    out,
                    "overlong wedge: {}  [{}]",
                    if empty {
                        "structurally zero"
                    } else {
                        "nonzero"
                    },
                    ok(empty)
                )
                .unwrap();
            }
            writeln!(
                out,
                "{}",
                if all_pass {
                    "all checks passed"
                } else {
                    "validation FAILED"
                }
            )
            .unwrap();
            out
        }
    };
    Ok(Outcome {
        stdout,
        checks_ok: all_pass,
    })
}
