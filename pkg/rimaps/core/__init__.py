from rimaps.core.Session import Session
