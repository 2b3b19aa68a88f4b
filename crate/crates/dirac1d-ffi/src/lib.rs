//! C ABI for the dirac1d simulator: opaque handles, integer status codes,
//! and a thread-local last-error message. The generated header lands in
//! `include/dirac1d.h` (see `build.rs`).

use std::cell::RefCell;
use std::ffi::CString;
use std::os::raw::c_char;

use dirac1d::{
    classical_velocity_mean, density, evolve_position, instantaneous_velocity_mean, lambda,
    mean_momentum, mean_position, parity, phase_velocity, project, to_momentum, to_position,
    zbw_mean, DiracError, EnergySign, Grid, PacketKind, PacketSpec, SpinorField,
};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracStatus {
    Ok = 0,
    NullPointer = 1,
    Argument = 2,
    GridMismatch = 3,
    Resolution = 4,
    DegenerateState = 5,
    Tracking = 6,
    Config = 7,
    Io = 8,
}

/// Initial-condition selector for `dirac_packet_new`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracPacketKind {
    Gauss11 = 0,
    Gauss11Boosted = 1,
    Gauss10 = 2,
    PosNegPair = 3,
}

/// Energy branch selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracEnergySign {
    Positive = 0,
    Negative = 1,
}

/// Opaque grid handle.
pub struct DiracGrid(Grid);

/// Opaque position-space spinor field handle.
pub struct DiracField(SpinorField);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(e: &DiracError) -> DiracStatus {
    let msg = CString::new(e.to_string()).unwrap_or_else(|_| CString::new("error").unwrap());
    LAST_ERROR.with(|cell| *cell.borrow_mut() = msg);
    match e {
        DiracError::GridMismatch(_) => DiracStatus::GridMismatch,
        DiracError::Resolution(_) => DiracStatus::Resolution,
        DiracError::Argument(_) => DiracStatus::Argument,
        DiracError::DegenerateState(_) => DiracStatus::DegenerateState,
        DiracError::Tracking(_) => DiracStatus::Tracking,
        DiracError::Config { .. } => DiracStatus::Config,
        DiracError::Io(_) => DiracStatus::Io,
    }
}

fn null_error(what: &str) -> DiracStatus {
    let msg = CString::new(format!("null pointer: {what}")).unwrap();
    LAST_ERROR.with(|cell| *cell.borrow_mut() = msg);
    DiracStatus::NullPointer
}

/// Message for the most recent error on this thread. The pointer stays
/// valid until the next failing call on the same thread. Never null.
#[no_mangle]
pub extern "C" fn dirac_last_error_message() -> *const c_char {
    LAST_ERROR.with(|cell| cell.borrow().as_ptr())
}

/// Create a grid with `n` samples (power of two, >= 16) on `[-l, l)`.
/// Returns null on failure; inspect `dirac_last_error_message`.
#[no_mangle]
pub extern "C" fn dirac_grid_new(n: usize, l: f64) -> *mut DiracGrid {
    match Grid::new(n, l) {
        Ok(g) => Box::into_raw(Box::new(DiracGrid(g))),
        Err(e) => {
            set_error(&e);
            std::ptr::null_mut()
        }
    }
}

/// # Safety
/// `grid` must be a pointer from `dirac_grid_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dirac_grid_free(grid: *mut DiracGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Number of position samples, or 0 for a null grid.
///
/// # Safety
/// `grid` must be null or a live pointer from `dirac_grid_new`.
#[no_mangle]
pub unsafe extern "C" fn dirac_grid_size(grid: *const DiracGrid) -> usize {
    match grid.as_ref() {
        Some(g) => g.0.n(),
        None => 0,
    }
}

/// Position of sample `j` (NaN for a null grid or out-of-range index).
///
/// # Safety
/// `grid` must be null or a live pointer from `dirac_grid_new`.
#[no_mangle]
pub unsafe extern "C" fn dirac_grid_position(grid: *const DiracGrid, j: usize) -> f64 {
    match grid.as_ref() {
        Some(g) if j < g.0.n() => g.0.position(j),
        _ => f64::NAN,
    }
}

/// Construct one of the canonical initial packets on `grid`.
/// Returns null on failure.
///
/// # Safety
/// `grid` must be a live pointer from `dirac_grid_new`.
#[no_mangle]
pub unsafe extern "C" fn dirac_packet_new(
    grid: *const DiracGrid,
    kind: DiracPacketKind,
) -> *mut DiracField {
    let Some(grid) = grid.as_ref() else {
        null_error("grid");
        return std::ptr::null_mut();
    };
    let kind = match kind {
        DiracPacketKind::Gauss11 => PacketKind::Gauss11,
        DiracPacketKind::Gauss11Boosted => PacketKind::Gauss11Boosted,
        DiracPacketKind::Gauss10 => PacketKind::Gauss10,
        DiracPacketKind::PosNegPair => PacketKind::PosNegPair,
    };
    match PacketSpec::new(kind).build(&grid.0) {
        Ok(f) => Box::into_raw(Box::new(DiracField(f))),
        Err(e) => {
            set_error(&e);
            std::ptr::null_mut()
        }
    }
}

/// # Safety
/// `field` must be a pointer from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_free(field: *mut DiracField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Evolve `field` by time `t` (exact propagator); returns a new handle or
/// null on failure. The input handle stays valid.
///
/// # Safety
/// `field` must be a live pointer from this library.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_evolve(field: *const DiracField, t: f64) -> *mut DiracField {
    let Some(field) = field.as_ref() else {
        null_error("field");
        return std::ptr::null_mut();
    };
    match evolve_position(&field.0, t) {
        Ok(f) => Box::into_raw(Box::new(DiracField(f))),
        Err(e) => {
            set_error(&e);
            std::ptr::null_mut()
        }
    }
}

/// Parity transform sigma3 psi(-x); returns a new handle.
///
/// # Safety
/// `field` must be a live pointer from this library.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_parity(field: *const DiracField) -> *mut DiracField {
    let Some(field) = field.as_ref() else {
        null_error("field");
        return std::ptr::null_mut();
    };
    Box::into_raw(Box::new(DiracField(parity(&field.0))))
}

/// Project onto the chosen energy subspace; returns a new handle.
///
/// # Safety
/// `field` must be a live pointer from this library.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_project(
    field: *const DiracField,
    sign: DiracEnergySign,
) -> *mut DiracField {
    let Some(field) = field.as_ref() else {
        null_error("field");
        return std::ptr::null_mut();
    };
    let sign = match sign {
        DiracEnergySign::Positive => EnergySign::Positive,
        DiracEnergySign::Negative => EnergySign::Negative,
    };
    let projected = to_position(&project(&to_momentum(&field.0), sign));
    Box::into_raw(Box::new(DiracField(projected)))
}

/// L2 norm of the field (NaN for a null handle).
///
/// # Safety
/// `field` must be null or a live pointer from this library.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_norm(field: *const DiracField) -> f64 {
    match field.as_ref() {
        Some(f) => f.0.norm(),
        None => f64::NAN,
    }
}

/// Time stamp carried by the field (NaN for a null handle).
///
/// # Safety
/// `field` must be null or a live pointer from this library.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_time(field: *const DiracField) -> f64 {
    match field.as_ref() {
        Some(f) => f.0.time,
        None => f64::NAN,
    }
}

/// Copy the position density into `out` (length `len` must equal the grid
/// size).
///
/// # Safety
/// `field` must be a live pointer from this library; `out` must point to
/// `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_density(
    field: *const DiracField,
    out: *mut f64,
    len: usize,
) -> DiracStatus {
    let Some(field) = field.as_ref() else {
        return null_error("field");
    };
    if out.is_null() {
        return null_error("out");
    }
    if len != field.0.grid.n() {
        return set_error(&DiracError::GridMismatch(format!(
            "buffer holds {len} samples, grid has {}",
            field.0.grid.n()
        )));
    }
    let d = density(&field.0);
    std::ptr::copy_nonoverlapping(d.rho.as_ptr(), out, len);
    DiracStatus::Ok
}

unsafe fn scalar_observable(
    field: *const DiracField,
    out: *mut f64,
    eval: impl FnOnce(&SpinorField) -> dirac1d::Result<f64>,
) -> DiracStatus {
    let Some(field) = field.as_ref() else {
        return null_error("field");
    };
    if out.is_null() {
        return null_error("out");
    }
    match eval(&field.0) {
        Ok(v) => {
            *out = v;
            DiracStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Mean position <x>.
///
/// # Safety
/// `field` must be a live pointer from this library; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_mean_position(
    field: *const DiracField,
    out: *mut f64,
) -> DiracStatus {
    scalar_observable(field, out, mean_position)
}

/// Mean momentum <p>.
///
/// # Safety
/// `field` must be a live pointer from this library; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_mean_momentum(
    field: *const DiracField,
    out: *mut f64,
) -> DiracStatus {
    scalar_observable(field, out, |f| mean_momentum(&to_momentum(f)))
}

/// Mean of the classical velocity operator p H0^{-1}.
///
/// # Safety
/// `field` must be a live pointer from this library; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_classical_velocity(
    field: *const DiracField,
    out: *mut f64,
) -> DiracStatus {
    scalar_observable(field, out, |f| classical_velocity_mean(&to_momentum(f)))
}

/// Mean of the instantaneous velocity operator sigma1.
///
/// # Safety
/// `field` must be a live pointer from this library; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_instantaneous_velocity(
    field: *const DiracField,
    out: *mut f64,
) -> DiracStatus {
    scalar_observable(field, out, instantaneous_velocity_mean)
}

/// Expectation of the Zitterbewegung term Z(t), taking `field` as the
/// t = 0 state.
///
/// # Safety
/// `field` must be a live pointer from this library; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dirac_field_zbw_mean(
    field: *const DiracField,
    t: f64,
    out: *mut f64,
) -> DiracStatus {
    let Some(field) = field.as_ref() else {
        return null_error("field");
    };
    if out.is_null() {
        return null_error("out");
    }
    match zbw_mean(&to_momentum(&field.0), t) {
        Ok(v) => {
            *out = v;
            DiracStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Relativistic dispersion lambda(p) = sqrt(p^2 + 1).
#[no_mangle]
pub extern "C" fn dirac_lambda(p: f64) -> f64 {
    lambda(p)
}

/// Phase velocity sign(E) lambda(p)/p; fails for p = 0.
#[no_mangle]
pub extern "C" fn dirac_phase_velocity(
    p: f64,
    sign: DiracEnergySign,
    out: *mut f64,
) -> DiracStatus {
    if out.is_null() {
        return null_error("out");
    }
    let sign = match sign {
        DiracEnergySign::Positive => EnergySign::Positive,
        DiracEnergySign::Negative => EnergySign::Negative,
    };
    match phase_velocity(p, sign) {
        Ok(v) => {
            unsafe { *out = v };
            DiracStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_lifecycle() {
        let grid = dirac_grid_new(256, 32.0);
        assert!(!grid.is_null());
        unsafe {
            assert_eq!(dirac_grid_size(grid), 256);
            assert!((dirac_grid_position(grid, 0) + 32.0).abs() < 1e-15);
            dirac_grid_free(grid);
        }
    }

    #[test]
    fn invalid_grid_reports_error() {
        let grid = dirac_grid_new(100, 32.0);
        assert!(grid.is_null());
        let msg = unsafe {
            std::ffi::CStr::from_ptr(dirac_last_error_message())
                .to_string_lossy()
                .into_owned()
        };
        assert!(msg.contains("power of two"), "message: {msg}");
    }

    #[test]
    fn packet_observables_roundtrip() {
        unsafe {
            let grid = dirac_grid_new(1024, 64.0);
            let packet = dirac_packet_new(grid, DiracPacketKind::Gauss11Boosted);
            assert!(!packet.is_null());
            assert!((dirac_field_norm(packet) - 1.0).abs() < 1e-10);

            let mut p = 0.0;
            assert_eq!(
                dirac_field_mean_momentum(packet, &mut p),
                DiracStatus::Ok
            );
            assert!((p - 0.75).abs() < 1e-9);

            let evolved = dirac_field_evolve(packet, 5.0);
            assert!(!evolved.is_null());
            assert!((dirac_field_time(evolved) - 5.0).abs() < 1e-15);
            assert!((dirac_field_norm(evolved) - 1.0).abs() < 1e-10);

            let mut rho = vec![0.0f64; 1024];
            assert_eq!(
                dirac_field_density(evolved, rho.as_mut_ptr(), rho.len()),
                DiracStatus::Ok
            );
            let total: f64 = rho.iter().sum::<f64>() * (128.0 / 1024.0);
            assert!((total - 1.0).abs() < 1e-10);

            dirac_field_free(evolved);
            dirac_field_free(packet);
            dirac_grid_free(grid);
        }
    }

    #[test]
    fn null_handles_are_rejected() {
        unsafe {
            let mut v = 0.0;
            assert_eq!(
                dirac_field_mean_position(std::ptr::null(), &mut v),
                DiracStatus::NullPointer
            );
            assert!(dirac_field_evolve(std::ptr::null(), 1.0).is_null());
            assert!(dirac_field_norm(std::ptr::null()).is_nan());
        }
    }

    #[test]
    fn projection_kills_zitterbewegung() {
        unsafe {
            let grid = dirac_grid_new(1024, 64.0);
            let packet = dirac_packet_new(grid, DiracPacketKind::Gauss11);
            let pos = dirac_field_project(packet, DiracEnergySign::Positive);
            let mut z = 1.0;
            assert_eq!(dirac_field_zbw_mean(pos, 5.0, &mut z), DiracStatus::Ok);
            assert!(z.abs() < 1e-10);
            dirac_field_free(pos);
            dirac_field_free(packet);
            dirac_grid_free(grid);
        }
    }

    #[test]
    fn phase_velocity_errors_at_zero() {
        let mut v = 0.0;
        assert_eq!(
            dirac_phase_velocity(0.0, DiracEnergySign::Positive, &mut v),
            DiracStatus::Argument
        );
        assert_eq!(
            dirac_phase_velocity(0.75, DiracEnergySign::Positive, &mut v),
            DiracStatus::Ok
        );
        assert!((v - 5.0 / 3.0).abs() < 1e-12);
    }
}
