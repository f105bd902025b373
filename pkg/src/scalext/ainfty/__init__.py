"""A-infinity algebras, modules and their obstruction-theoretic lifting."""
from .algebra import (
    AInftyAlgebra,
    Cohomology,
    TaylorMap,
    Violation,
    add_b3_repair,
    bar_square,
    coderivation_square,
    cohomology_algebra,
    dg_square_check,
    shift_signs,
    unshift_signs,
)
from .core import GradedSpace, LinExpr
from .modules import (
    AInftyModule,
    ModuleCohomology,
    StructureResult,
    chain_level_action,
    endomorphism_algebra,
    homotopy_holds,
    lift_module_morphism,
    lift_module_structure,
    module_defect,
    module_morphism_holds,
    module_square_violations,
    nullhomotopy,
)
from .morphisms import (
    LiftResult,
    ObstructionClass,
    lift_algebra_morphism,
    morphism_defect,
    morphism_equation_holds,
)
