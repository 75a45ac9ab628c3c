//! Text and image renderings of grids, contours and JSON artifacts. Floats
//! are written with 17 significant digits so every value round-trips.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::entropy::EntropyGrid;
use crate::error::{Error, Result};
use crate::geometry::Pt;
use crate::skeleton::Isentrope;

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Pretty JSON whose floats carry 17 significant digits.
struct Digits17(PrettyFormatter<'static>);

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            w.write_all(fmt_f64(value).as_bytes())
        } else {
            w.write_all(b"null")
        }
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| Error::Numeric(format!("json: {e}")))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Numeric(format!("json: {e}")))
}

/// `v,w,h,err,estimator`, one row per node, `w` outermost.
pub fn grid_csv(grid: &EntropyGrid) -> String {
    let mut out = String::from("v,w,h,err,estimator\n");
    for j in 0..grid.res {
        for i in 0..grid.res {
            let p = grid.point(i, j);
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_f64(p.v),
                fmt_f64(p.w),
                fmt_f64(grid.value(i, j)),
                fmt_f64(grid.err(i, j)),
                grid.estimator
            ));
        }
    }
    out
}

fn gray(h: f64) -> u8 {
    (255.0 * (h / 4f64.ln()).clamp(0.0, 1.0)).round() as u8
}

fn pgm(res: usize, pixels: &[u8]) -> Vec<u8> {
    let mut out = format!("P5\n{res} {res}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}

/// Binary PGM of the grid, one pixel per node, `w = 1` on the top row and
/// `h` scaled so that `log 4` is white.
pub fn grid_pgm(grid: &EntropyGrid) -> Vec<u8> {
    pgm(grid.res, &heat(grid))
}

fn heat(grid: &EntropyGrid) -> Vec<u8> {
    let r = grid.res;
    (0..r).rev().flat_map(|j| (0..r).map(move |i| (i, j))).map(|(i, j)| gray(grid.value(i, j))).collect()
}

fn draw(pixels: &mut [u8], res: usize, line: &[Pt], value: u8) {
    let scale = (res - 1) as f64;
    let mut put = |p: Pt| {
        let i = (p.0.clamp(0.0, 1.0) * scale).round() as usize;
        let j = (p.1.clamp(0.0, 1.0) * scale).round() as usize;
        pixels[(res - 1 - j) * res + i] = value;
    };
    for s in line.windows(2) {
        let len = (s[1].0 - s[0].0).hypot(s[1].1 - s[0].1);
        let steps = (2.0 * len * scale).ceil().max(1.0) as usize;
        for k in 0..=steps {
            let t = k as f64 / steps as f64;
            put((s[0].0 + t * (s[1].0 - s[0].0), s[0].1 + t * (s[1].1 - s[0].1)));
        }
    }
    if let [p] = line {
        put(*p);
    }
}

/// Heatmap with `curves` drawn black and `contours` drawn white.
pub fn overlay_pgm(grid: &EntropyGrid, curves: &[Vec<Pt>], contours: &[Vec<Pt>]) -> Vec<u8> {
    let mut pixels = heat(grid);
    for c in curves {
        draw(&mut pixels, grid.res, c, 0);
    }
    for c in contours {
        draw(&mut pixels, grid.res, c, 255);
    }
    pgm(grid.res, &pixels)
}

/// `contour,index,v,w`, one row per contour point.
pub fn isentrope_csv(iso: &Isentrope) -> String {
    let mut out = String::from("contour,index,v,w\n");
    for (c, line) in iso.polylines.iter().enumerate() {
        for (k, p) in line.iter().enumerate() {
            out.push_str(&format!("{c},{k},{},{}\n", fmt_f64(p.0), fmt_f64(p.1)));
        }
    }
    out
}
