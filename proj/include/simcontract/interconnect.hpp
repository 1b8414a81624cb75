#pragma once

#include "simcontract/models.hpp"

namespace simcontract {

/// Interconnection of an environment (or assumption) with an open system,
/// obtained by feeding the environment's output into the system's input.
/// State is (x_e, x); outputs are u = C_e x_e followed by y = C x.
/// Requires e.output_dim() == s.input_dim().
GuaranteeSystem env_meet_sys(const ConstrainedSystem& e, const DrivenSystem& s);

/// Interconnection of an assumption with a guarantee, obtained by equating
/// their u outputs through an algebraic constraint row block
/// [H_a 0; 0 H_g; C_a -C^u_g]. Dynamics are block diagonal; outputs are
/// u = C_a x_a followed by y = C^y_g x_g. Requires a.output_dim() == g.u_dim.
GuaranteeSystem ass_meet_gar(const ConstrainedSystem& a,
                             const GuaranteeSystem& g);

/// Series interconnection of two open systems: the output of s1 drives the
/// input of s2. Requires s1.output_dim() == s2.input_dim().
DrivenSystem series_sigma(const DrivenSystem& s1, const DrivenSystem& s2);

/// Series interconnection of two guarantees: the y output of g1 is equated
/// with the u output of g2 through the constraint block
/// [H_1 0; 0 H_2; C^y_1 -C^u_2]. Requires g1.y_dim == g2.u_dim.
GuaranteeSystem series_gar(const GuaranteeSystem& g1, const GuaranteeSystem& g2);

}  // namespace simcontract
