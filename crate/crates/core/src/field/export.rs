use std::io::Write;

use super::values::{ComplexField, RealField};
use crate::error::Result;

/// CSV with header `x,y,re,im`, one row per supported node.
pub fn write_field_csv<W: Write>(field: &ComplexField, mut out: W) -> Result<()> {
    writeln!(out, "x,y,re,im")?;
    for (_, z, v) in field.iter() {
        writeln!(out, "{},{},{},{}", z.re, z.im, v.re, v.im)?;
    }
    Ok(())
}

/// CSV with header `x,y,value`.
pub fn write_real_csv<W: Write>(field: &RealField, mut out: W) -> Result<()> {
    writeln!(out, "x,y,value")?;
    for (_, z, v) in field.iter() {
        writeln!(out, "{},{},{}", z.re, z.im, v)?;
    }
    Ok(())
}
