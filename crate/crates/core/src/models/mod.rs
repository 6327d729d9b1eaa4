//! Concrete operators: the sphere and Euclidean families, their integrals,
//! gauges, potentials and metrics.

pub mod euclid;
pub mod metric;
pub mod params;
pub mod radial;
pub mod sphere;

pub use params::{EuclidParams, SphereParams};
pub use sphere::{
    build_es_from_generators, build_es_from_generators_printed, build_es_sphere, build_es_sphere_with,
    build_integral, build_integral_printed, build_l_chain, build_qes_sphere, build_qes_sphere_with, potentials, psi0,
    qes_gauge_corrected, qes_gauge_printed, Chart, Convention, IntegralKind, Which,
};
pub use metric::{invariant_metric, scalar_curvature, sphere_metric, MetricData};
pub use euclid::{build_euclid, EuclidStage};
pub use radial::{radial_split_euclid, radial_split_sphere, RadialSplit};
