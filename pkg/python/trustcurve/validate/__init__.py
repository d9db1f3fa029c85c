from .base import CheckResult, ExactOrder, LowerBoundOnly, Outcome, ValidationReport, combine
from .thresholds import PROFILES, ROLES, SecurityThresholds
from .rho import joint_rho_log2, parallel_rho_cost_log2, rho_cost_log2
from .transfer import check_mov, embedding_degree
from .discriminant import CmDiscriminantResult, cm_discriminant
from .ecdlp import check_anomalous, check_supersingular, trace, validate_ecdlp
from .twist import validate_twist
from .audit import CRITERIA_ORDER, CurveAudit, audit_matrix, finish_report, full_audit, verify_domain
