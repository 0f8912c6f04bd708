pub mod atlas;
pub mod classify;
pub mod curvature;
pub mod exact;
pub mod groups;
pub mod isotropy;
pub mod lattices;
pub mod liealg;
pub mod numeric;
