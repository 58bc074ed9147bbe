//! Lagrangian submanifolds in toric cones: exact validation of the cone
//! data, the slice polygon and the topology of the glued surface, the
//! special Lagrangian and self-shrinker conditions on motion profiles, and
//! a numerical oracle in flat `C^m`.

pub mod cone;
pub mod document;
pub mod examples;
pub mod flat;
pub mod linalg;
pub mod pipeline;
pub mod profile;
pub mod shrinker;
pub mod slice;
pub mod svg;
pub mod topology;

pub use cone::{
    calabi_yau_gamma, extreme_rays, is_good, reeb_admissible, CalabiYauData, ConeError, ExtremeRaySet, GoodnessReport,
    GoodnessViolation, GoodnessWitness, PolyhedralCone,
};
pub use document::{generate_example, ConeSpecDocument, DocumentError, ProfileDescriptor, SliceDocument};
pub use examples::{genus_family, genus_family_conormals};
pub use flat::{Chart, FlatError, FlatImmersion, Parametrization, SamplePoint};
pub use linalg::{smith_normal_form, IntMatrix, LatticeVector, LinalgError, RationalVector, SmithDecomposition};
pub use pipeline::{run_pipeline, CheckRecord, CheckSelection, PipelineOptions, Report, Status, CHECK_NAMES};
pub use profile::{AngleParams, Interval, Jet, MotionProfile, ProfileError};
pub use shrinker::{integrate, ShrinkerError, ShrinkerParams, ShrinkerState, Trajectory};
pub use slice::{check_assumptions, compute_slice, AssumptionReport, SliceError, SlicePolytope, SliceSpec};
pub use svg::{gluing_svg, slice_svg};
pub use topology::{build_glued_surface, glue_sign_copies, GluedSurface, SignVector, TopologyError};
