# Forms package