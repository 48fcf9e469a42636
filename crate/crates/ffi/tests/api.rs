use std::ffi::{CStr, CString};
use std::ptr;

use resolvekit_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(rk_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn karate_allocation_through_handles() {
    unsafe {
        let key = CString::new("karate").unwrap();
        let mut base = ptr::null_mut();
        assert_eq!(rk_params_preset(key.as_ptr(), &mut base), RkStatus::Ok);
        let mut scaled = ptr::null_mut();
        assert_eq!(rk_params_scale(base, 10_000, &mut scaled), RkStatus::Ok);
        assert_eq!(rk_params_communities(scaled), 2);
        assert_eq!(rk_params_vertices(scaled), 10_000);
        let mut alloc = [0u32; 2];
        let mut f = 0.0;
        assert_eq!(rk_mine(scaled, 0.01, alloc.as_mut_ptr(), &mut f), RkStatus::Ok);
        assert_eq!(alloc.iter().sum::<u32>(), 82);
        assert!(f <= 0.01);
        assert_eq!(rk_mine(scaled, 0.0, alloc.as_mut_ptr(), ptr::null_mut()), RkStatus::Infeasible);
        rk_params_free(scaled);
        rk_params_free(base);
    }
}

#[test]
fn params_validation_reports_the_entry() {
    unsafe {
        let sizes = [3usize, 4];
        let p = [0.5, 1.2, 1.2, 0.5];
        let mut out = ptr::null_mut();
        assert_eq!(rk_params_new(sizes.as_ptr(), 2, p.as_ptr(), &mut out), RkStatus::InvalidParams);
        assert!(out.is_null());
        assert!(last_error().contains("1.2"), "{}", last_error());
        let json = CString::new(r#"{"community_sizes": [3, 4], "P": [[0.5, 0.1], [0.1, 0.5]]}"#).unwrap();
        assert_eq!(rk_params_from_json(json.as_ptr(), &mut out), RkStatus::Ok);
        assert_eq!(rk_params_vertices(out), 7);
        rk_params_free(out);
        let unknown = CString::new("nowhere").unwrap();
        assert_eq!(rk_params_preset(unknown.as_ptr(), &mut out), RkStatus::InvalidParams);
    }
}

#[test]
fn null_handles_are_rejected() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(rk_sample(ptr::null(), 0, &mut g), RkStatus::NullPointer);
        assert!(last_error().contains("params"));
        assert_eq!(rk_graph_vertices(ptr::null()), 0);
        rk_graph_free(ptr::null_mut());
        rk_params_free(ptr::null_mut());
        let mut len = 0;
        assert_eq!(rk_ich(ptr::null(), RkTarget::Distance, ptr::null_mut(), 0, &mut len), RkStatus::NullPointer);
    }
}

#[test]
fn resolving_sets_on_small_graphs() {
    unsafe {
        // path 0-1-2
        let edges = [0u32, 1, 1, 2];
        let mut g = ptr::null_mut();
        assert_eq!(rk_graph_from_edges(3, edges.as_ptr(), 2, &mut g), RkStatus::Ok);
        assert_eq!(rk_graph_edges(g), 2);
        let mut ok = false;
        assert_eq!(rk_is_resolving(g, RkTarget::Distance, [0u32].as_ptr(), 1, &mut ok), RkStatus::Ok);
        assert!(ok);
        assert_eq!(rk_is_resolving(g, RkTarget::Distance, [1u32].as_ptr(), 1, &mut ok), RkStatus::Ok);
        assert!(!ok);
        assert_eq!(rk_is_resolving(g, RkTarget::Distance, [7u32].as_ptr(), 1, &mut ok), RkStatus::MalformedInput);

        let mut buf = [0u32; 3];
        let mut len = 0;
        assert_eq!(rk_ich(g, RkTarget::Distance, buf.as_mut_ptr(), 3, &mut len), RkStatus::Ok);
        assert_eq!(len, 1);
        assert_eq!(rk_random_baseline(g, 4, buf.as_mut_ptr(), 0, &mut len), RkStatus::BufferTooSmall);
        assert!(len >= 1);
        assert_eq!(rk_random_baseline(g, 4, buf.as_mut_ptr(), 3, &mut len), RkStatus::Ok);
        assert_eq!(rk_is_resolving(g, RkTarget::ModifiedAdjacency, buf.as_ptr(), len, &mut ok), RkStatus::Ok);
        assert!(ok);
        rk_graph_free(g);

        // the two ends of a 4-cycle share a neighborhood, so A has no resolving set
        let edges = [0u32, 1, 1, 2, 2, 3, 3, 0];
        assert_eq!(rk_graph_from_edges(4, edges.as_ptr(), 4, &mut g), RkStatus::Ok);
        assert_eq!(rk_ich(g, RkTarget::Adjacency, buf.as_mut_ptr(), 3, &mut len), RkStatus::NoResolvingSet);
        rk_graph_free(g);
    }
}

#[test]
fn sampling_is_seeded() {
    unsafe {
        let sizes = [20usize, 20];
        let p = [0.3, 0.05, 0.05, 0.3];
        let mut params = ptr::null_mut();
        assert_eq!(rk_params_new(sizes.as_ptr(), 2, p.as_ptr(), &mut params), RkStatus::Ok);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(rk_sample(params, 9, &mut a), RkStatus::Ok);
        assert_eq!(rk_sample(params, 9, &mut b), RkStatus::Ok);
        assert_eq!(rk_graph_vertices(a), 40);
        assert_eq!(rk_graph_edges(a), rk_graph_edges(b));
        rk_graph_free(a);
        rk_graph_free(b);
        rk_params_free(params);
    }
}

#[test]
fn erdos_renyi_bounds() {
    unsafe {
        let mut v = 0;
        assert_eq!(rk_er_beta_upper(500, 0.5, &mut v), RkStatus::Ok);
        assert_eq!(v, 18);
        assert_eq!(rk_er_any_set_size(500, 0.5, &mut v), RkStatus::Ok);
        assert_eq!(v, 27);
        assert_eq!(rk_er_any_set_size(500, 1.5, &mut v), RkStatus::Domain);
        let version = CStr::from_ptr(rk_version()).to_str().unwrap();
        assert_eq!(version, env!("CARGO_PKG_VERSION"));
    }
}
