from rimaps.common.Utils import Utils
