from rimaps.hermitian.AntiInvarianceVerdict import AntiInvarianceVerdict
from rimaps.hermitian.AntiInvarianceVerdict import Classification
from rimaps.hermitian.HermitianAnalyzer import HermitianAnalyzer
