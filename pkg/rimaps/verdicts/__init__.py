from rimaps.verdicts.CheckRegistry import CheckRegistry
from rimaps.verdicts.TheoremChecks import TheoremChecks
from rimaps.verdicts.VerificationReport import Verdict
from rimaps.verdicts.VerificationReport import VerificationReport
