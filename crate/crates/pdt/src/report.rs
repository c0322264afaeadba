//! Per-block CSV rows for ratio runs.

use std::io::Write;

use pdt_core::analysis::RatioSeries;
use pdt_core::seqgen::{Order, Variant};
use serde::Serialize;

/// One row per block.
///
/// `prefix_len`, `out_len` and `rho` describe the streaming run up to the end
/// of the block. `h_*`, `d`, `N` and `bound_ok` describe the block on its own.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub k: u16,
    pub variant: String,
    pub n: u32,
    pub prefix_len: u64,
    pub out_len: u64,
    pub rho: f64,
    pub h_observed: u64,
    pub h_expected: Option<u128>,
    pub d: i64,
    #[serde(rename = "N")]
    pub long_pops: u64,
    pub bound_ok: bool,
}

pub fn variant_label(variant: Variant) -> String {
    match variant {
        Variant::PairedLex => "paired-lex".into(),
        Variant::PairedEnumeration(Order::Lex) => "paired-enum".into(),
        Variant::PairedEnumeration(Order::Shuffled(seed)) => format!("paired-enum@{seed}"),
    }
}

pub fn rows(series: &RatioSeries) -> Vec<Row> {
    let variant = variant_label(series.variant);
    series
        .points
        .iter()
        .zip(&series.blocks)
        .map(|(p, b)| Row {
            k: series.k.k(),
            variant: variant.clone(),
            n: p.block,
            prefix_len: p.n_read,
            out_len: p.m_written,
            rho: p.rho,
            h_observed: b.h_observed,
            h_expected: b.h_expected,
            d: b.d,
            long_pops: b.long_pops,
            bound_ok: b.bound_ok(),
        })
        .collect()
}

pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
